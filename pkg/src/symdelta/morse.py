"""Discrete Morse functions on symmetric Delta-complexes.

Values are exact rationals keyed by orbit, so constancy on orbits is built in.
For an orbit [alpha] of dimension p,

* u_f counts cover orbits [beta] with alpha < beta permissible and f(alpha) >= f(beta),
* d_f counts face orbits [gamma] with gamma < alpha permissible and f(alpha) <= f(gamma),

and f is a discrete Morse function when non-permissible covers strictly
increase, and both counts are at most one everywhere.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Union

from .complex import Orbit, SymmetricDeltaComplex, subcomplex_generated
from .errors import InvalidDMFError, UnknownOrbitError
from .permissibility import oracle_for

Number = Union[int, str, Fraction]


def parse_value(v: Number) -> Fraction:
    if isinstance(v, bool) or isinstance(v, float):
        raise ValueError(f"Morse values must be integers or rationals, not {v!r}")
    return Fraction(v)


@dataclass
class DiscreteMorseFunction:
    values: dict[Orbit, Fraction]

    def __getitem__(self, orb: Orbit) -> Fraction:
        return self.values[orb]

    def __len__(self):
        return len(self.values)

    @classmethod
    def from_simplices(cls, X: SymmetricDeltaComplex, mapping: Mapping[str, Number]) -> "DiscreteMorseFunction":
        """Build from ``simplex id -> value``; any member may stand for its orbit."""
        values: dict[Orbit, Fraction] = {}
        for x, v in mapping.items():
            if x not in X:
                raise UnknownOrbitError(f"unknown simplex {x!r}")
            orb = X.orbit(x)
            val = parse_value(v)
            if orb in values and values[orb] != val:
                raise ValueError(f"conflicting values for orbit {orb}")
            values[orb] = val
        return cls(values)

    def to_dict(self) -> dict[str, str]:
        return {orb.rep: str(v) for orb, v in sorted(self.values.items())}


@dataclass(frozen=True)
class DmfViolation:
    condition: str  # "ii", "iii" or "iv"
    lower: Orbit
    upper: Orbit | None = None

    def __str__(self):
        where = f"({self.lower}, {self.upper})" if self.upper is not None else str(self.lower)
        return f"condition ({self.condition}) at {where}"


@dataclass
class DmfReport:
    u: dict[Orbit, int] = field(default_factory=dict)
    d: dict[Orbit, int] = field(default_factory=dict)
    violations: list[DmfViolation] = field(default_factory=list)
    critical: list[Orbit] = field(default_factory=list)

    @property
    def valid(self) -> bool:
        return not self.violations

    def to_dict(self) -> dict:
        return {
            "valid": self.valid,
            "u_f": {o.rep: n for o, n in sorted(self.u.items())},
            "d_f": {o.rep: n for o, n in sorted(self.d.items())},
            "violations": [
                {"condition": v.condition, "lower": v.lower.rep, "upper": v.upper.rep if v.upper else None}
                for v in self.violations
            ],
            "critical": [o.rep for o in self.critical],
        }


def _require_total(X, f):
    missing = [o for o in X.orbits() if o not in f.values]
    if missing:
        raise InvalidDMFError(f"function is not total: no value for {', '.join(map(str, missing))}")


def validate_dmf(X: SymmetricDeltaComplex, f: DiscreteMorseFunction) -> DmfReport:
    _require_total(X, f)
    permissible = oracle_for(X)
    report = DmfReport()
    orbs = X.orbits()
    for o in orbs:
        report.u[o] = 0
        report.d[o] = 0
    for beta in orbs:
        for alpha in X.lower_covers(beta):
            if not permissible(alpha, beta):
                if not f[alpha] < f[beta]:
                    report.violations.append(DmfViolation("ii", alpha, beta))
            elif f[alpha] >= f[beta]:
                report.u[alpha] += 1
                report.d[beta] += 1
    for o in orbs:
        if report.u[o] > 1:
            report.violations.append(DmfViolation("iii", o))
        if report.d[o] > 1:
            report.violations.append(DmfViolation("iv", o))
    if report.valid:
        report.critical = [o for o in orbs if report.u[o] == 0 and report.d[o] == 0]
    return report


def _require_valid(X, f) -> DmfReport:
    report = validate_dmf(X, f)
    if not report.valid:
        raise InvalidDMFError(
            "not a discrete Morse function: " + "; ".join(map(str, report.violations)), report
        )
    return report


def critical_orbits(X: SymmetricDeltaComplex, f: DiscreteMorseFunction) -> list[Orbit]:
    return _require_valid(X, f).critical


def exception_pairs(X: SymmetricDeltaComplex, f: DiscreteMorseFunction) -> set[tuple[Orbit, Orbit]]:
    """Covers [alpha] < [beta] with f(alpha) >= f(beta) (all permissible for a valid f)."""
    return {
        (alpha, beta)
        for beta in X.orbits()
        for alpha in X.lower_covers(beta)
        if f[alpha] >= f[beta]
    }


def level_subcomplex(X: SymmetricDeltaComplex, f: DiscreteMorseFunction, c: Number) -> SymmetricDeltaComplex:
    """K(c): the subcomplex generated by all simplices with value at most c."""
    _require_valid(X, f)
    c = parse_value(c)
    return subcomplex_generated(X, [o.rep for o in X.orbits() if f[o] <= c])


def perturb_orbit_injective(X: SymmetricDeltaComplex, f: DiscreteMorseFunction) -> DiscreteMorseFunction:
    """An orbit-injective function with the same exceptions and critical orbits.

    Orbits are ranked by (value, dimension descending, representative).  Within
    a tie the higher-dimensional orbit comes first, so a tied exception pair
    stays an exception.
    """
    _require_valid(X, f)
    ranked = sorted(X.orbits(), key=lambda o: (f[o], -o.dim, o.rep))
    return DiscreteMorseFunction({o: Fraction(i) for i, o in enumerate(ranked)})
