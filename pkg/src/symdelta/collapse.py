"""Collapse/attach scheduling driven by a discrete Morse function.

Orbits are visited in increasing order of an orbit-injective perturbation of
f, growing the level subcomplex one value at a time.  An orbit that was
already swept in is skipped; a critical orbit is attached as a cell; any
other orbit enters together with its matched lower face, and the pair is
recorded as an elementary collapse.  Reading the trace backwards collapses X
onto the attached cells.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from . import perms
from .complex import Orbit, SymmetricDeltaComplex
from .morse import (
    DiscreteMorseFunction,
    _require_valid,
    exception_pairs,
    level_subcomplex,
    perturb_orbit_injective,
)
from .matching import Matching, matching_to_dmf
from .permissibility import oracle_for


@dataclass(frozen=True)
class GroupFingerprint:
    order: int
    abelian: bool
    element_orders: tuple[int, ...]
    has_odd: bool

    @classmethod
    def of(cls, group) -> "GroupFingerprint":
        group = list(group)
        abelian = all(perms.compose(a, b) == perms.compose(b, a) for a in group for b in group)
        return cls(
            order=len(group),
            abelian=abelian,
            element_orders=tuple(sorted(perms.order(g) for g in group)),
            has_odd=any(perms.sign(g) == -1 for g in group),
        )

    def to_dict(self) -> dict:
        return {
            "order": self.order,
            "abelian": self.abelian,
            "element_orders": list(self.element_orders),
            "has_odd": self.has_odd,
        }


@dataclass(frozen=True)
class Attach:
    step: int
    orbit: Orbit
    dim: int
    group: GroupFingerprint

    def __str__(self):
        return f"{self.step}: Attach({self.orbit}, {self.dim}, |G|={self.group.order})"

    def to_dict(self) -> dict:
        return {"step": self.step, "kind": "attach", "orbit": self.orbit.rep, "dim": self.dim,
                "group": self.group.to_dict()}


@dataclass(frozen=True)
class Collapse:
    step: int
    lower: Orbit
    upper: Orbit

    def __str__(self):
        return f"{self.step}: Collapse({self.lower}, {self.upper})"

    def to_dict(self) -> dict:
        return {"step": self.step, "kind": "collapse", "lower": self.lower.rep, "upper": self.upper.rep}


CollapseEvent = Union[Attach, Collapse]


@dataclass(frozen=True)
class Cell:
    dim: int
    orbit: Orbit
    group: GroupFingerprint


@dataclass
class MorseModel:
    cells: list[Cell]

    def count(self, p: int, without_odd: bool = False) -> int:
        return sum(1 for c in self.cells if c.dim == p and not (without_odd and c.group.has_odd))

    def to_list(self) -> list[dict]:
        return [{"dim": c.dim, "orbit": c.orbit.rep, "group": c.group.to_dict()} for c in self.cells]


def collapse_by_dmf(
    X: SymmetricDeltaComplex, f: DiscreteMorseFunction, check_levels: bool = False
) -> tuple[list[CollapseEvent], MorseModel]:
    report = _require_valid(X, f)
    g = perturb_orbit_injective(X, f)
    pairs = exception_pairs(X, g)
    assert pairs == exception_pairs(X, f)
    down = {up: lo for lo, up in pairs}
    up_of = {lo: up for lo, up in pairs}
    permissible = oracle_for(X)

    order = sorted(X.orbits(), key=lambda o: g[o])
    state: set[Orbit] = set()
    trace: list[CollapseEvent] = []
    previous = None
    for orb in order:
        if orb in state:
            # swept in with a higher-dimensional partner of smaller value
            assert orb in up_of and g[up_of[orb]] < g[orb]
            if check_levels:
                assert level_subcomplex(X, g, previous) == level_subcomplex(X, g, g[orb])
        elif orb in down:
            lower = down[orb]
            assert lower not in state and g[lower] > g[orb]
            assert all(o in state for o in X.lower_covers(orb) if o != lower)
            assert all(o in state for o in X.lower_covers(lower))
            state.update((lower, orb))
            cofaces = [o for o in X.upper_covers(lower) if o in state]
            assert cofaces == [orb], f"{lower} is not a free face of {orb}"
            assert permissible(lower, orb)
            trace.append(Collapse(len(trace), lower, orb))
        else:
            assert report.u[orb] == 0 and report.d[orb] == 0, f"{orb} is neither critical nor matched"
            assert all(o in state for o in X.lower_covers(orb))
            state.add(orb)
            group = GroupFingerprint.of(X.automorphisms(orb.rep))
            trace.append(Attach(len(trace), orb, orb.dim, group))
        previous = g[orb]
    remaining = set(X.orbits())
    for event in trace:
        if isinstance(event, Attach):
            remaining.discard(event.orbit)
        else:
            remaining -= {event.lower, event.upper}
    assert not remaining and state == set(X.orbits())
    model = MorseModel([Cell(e.dim, e.orbit, e.group) for e in trace if isinstance(e, Attach)])
    return trace, model


def collapse_by_matching(
    X: SymmetricDeltaComplex, M: Matching, check_levels: bool = False
) -> tuple[list[CollapseEvent], MorseModel]:
    return collapse_by_dmf(X, matching_to_dmf(X, M), check_levels)


def certify_contractible_by_collapse(trace: list[CollapseEvent]) -> bool:
    """True iff the trace attaches a single 0-cell and otherwise only collapses."""
    attaches = [e for e in trace if isinstance(e, Attach)]
    return len(attaches) == 1 and attaches[0].dim == 0


def prefix_complexes(X: SymmetricDeltaComplex, trace: list[CollapseEvent]) -> list[SymmetricDeltaComplex]:
    """The growing subcomplex after each event of ``trace``."""
    out = []
    members: set[str] = set()
    for event in trace:
        orbs = [event.orbit] if isinstance(event, Attach) else [event.lower, event.upper]
        for o in orbs:
            members |= o.members
        out.append(X.restrict(members))
    return out


def morse_inequalities_hold(betti: list[int], model: MorseModel) -> bool:
    return all(b <= model.count(p, without_odd=True) for p, b in enumerate(betti))
