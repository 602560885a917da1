"""Finite symmetric Delta-complexes given by generators.

A complex is stored as, for every dimension p, the set X_p of simplex
identifiers, the action of each adjacent transposition s_i = (i, i+1) of [p],
and the p+1 face maps d_m: X_p -> X_{p-1}, where d_m is the pullback along the
order-preserving injection [p-1] -> [p] whose image misses m.

Pullbacks compose contravariantly: ``(a o b)^* = b^* o a^*``.  An orbit is the
set of simplices reachable from one another by the symmetric group action.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from itertools import combinations, permutations
from typing import Iterable, Mapping, Sequence

from . import perms
from .errors import ComplexFormatError, DimensionError, FactorialLimitError, PreconditionError
from .perms import Injection, Perm

DEFAULT_FACTORIAL_LIMIT = 7


@dataclass(frozen=True, order=True)
class Orbit:
    """A symmetric orbit, identified by its dimension and minimal member."""

    dim: int
    rep: str
    members: frozenset = field(compare=False, repr=False)

    def __len__(self):
        return len(self.members)

    def __contains__(self, x):
        return x in self.members

    def __str__(self):
        return f"[{self.rep}]"


@dataclass(frozen=True)
class Violation:
    family: str
    dim: int
    witness: str
    detail: str = ""


@dataclass
class ValidationReport:
    violations: list[Violation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self):
        return self.ok


class SymmetricDeltaComplex:
    """Generator presentation of a symmetric Delta-complex.

    ``simplices[p]`` lists X_p.  ``transpositions[p - 1][i]`` maps each simplex
    of X_p to its image under s_i, and ``faces[p - 1][m]`` gives d_m on X_p,
    for p >= 1.  Identifiers must be strings, unique across all dimensions.
    Structural defects raise :class:`ComplexFormatError`; the functor
    relations are checked separately by :func:`validate_complex`.
    """

    def __init__(
        self,
        simplices: Sequence[Iterable[str]],
        transpositions: Sequence[Sequence[Mapping[str, str]]] = (),
        faces: Sequence[Sequence[Mapping[str, str]]] = (),
    ):
        self._simplices = tuple(tuple(sorted(xs)) for xs in simplices)
        self._dim_of: dict[str, int] = {}
        for p, xs in enumerate(self._simplices):
            for x in xs:
                if not isinstance(x, str):
                    raise ComplexFormatError(f"simplex identifier {x!r} is not a string")
                if x in self._dim_of:
                    raise ComplexFormatError(f"duplicate simplex identifier {x!r}")
                self._dim_of[x] = p
        top = len(self._simplices) - 1
        if len(transpositions) != max(top, 0) or len(faces) != max(top, 0):
            raise ComplexFormatError(
                f"expected {max(top, 0)} transposition and face blocks, got "
                f"{len(transpositions)} and {len(faces)}"
            )
        self._act: list[list[dict[str, str]]] = [[]]
        self._face: list[list[dict[str, str]]] = [[]]
        for p in range(1, top + 1):
            acts = transpositions[p - 1]
            fcs = faces[p - 1]
            if len(acts) != p:
                raise ComplexFormatError(f"dimension {p}: expected {p} transpositions, got {len(acts)}")
            if len(fcs) != p + 1:
                raise ComplexFormatError(f"dimension {p}: expected {p + 1} face maps, got {len(fcs)}")
            self._act.append([self._check_map(a, p, p, f"s_{i}") for i, a in enumerate(acts)])
            self._face.append([self._check_map(d, p, p - 1, f"d_{m}") for m, d in enumerate(fcs)])
        self._orbit_of: dict[str, Orbit] | None = None
        self._aut_cache: dict[str, frozenset[Perm]] = {}
        self._transversal_cache: dict[str, dict[str, Perm]] = {}

    def _check_map(self, mapping, p, q, name) -> dict[str, str]:
        mapping = dict(mapping)
        source, target = set(self._simplices[p]), set(self._simplices[q])
        if set(mapping) != source:
            missing = sorted(source - set(mapping))
            extra = sorted(set(mapping) - source)
            raise ComplexFormatError(
                f"dimension {p}, {name}: domain mismatch (missing {missing}, unexpected {extra})"
            )
        for x, y in mapping.items():
            if y not in target:
                raise ComplexFormatError(f"dimension {p}, {name}: {x!r} maps to {y!r}, not in X_{q}")
        return mapping

    # -- basic access ---------------------------------------------------------

    @property
    def max_dim(self) -> int:
        return len(self._simplices) - 1

    def simplices(self, p: int) -> tuple[str, ...]:
        if 0 <= p < len(self._simplices):
            return self._simplices[p]
        return ()

    def all_simplices(self) -> list[str]:
        return [x for xs in self._simplices for x in xs]

    def __contains__(self, x) -> bool:
        return x in self._dim_of

    def __len__(self) -> int:
        return len(self._dim_of)

    def is_empty(self) -> bool:
        return not self._dim_of

    def dim(self, x: str) -> int:
        try:
            return self._dim_of[x]
        except KeyError:
            raise KeyError(f"unknown simplex {x!r}") from None

    def act(self, x: str, i: int) -> str:
        """The image of ``x`` under the adjacent transposition s_i."""
        return self._act[self.dim(x)][i][x]

    def face(self, x: str, m: int) -> str:
        """d_m(x): the face of ``x`` opposite to vertex position m."""
        return self._face[self.dim(x)][m][x]

    def faces_of(self, x: str) -> list[str]:
        return [self.face(x, m) for m in range(self.dim(x) + 1)] if self.dim(x) else []

    def pull_perm(self, x: str, rho: Sequence[int]) -> str:
        """rho^*(x) for a permutation rho of [dim x]."""
        for i in reversed(perms.adjacent_word(rho)):
            x = self.act(x, i)
        return x

    def pullback(self, theta: Sequence[int], x: str) -> str:
        """theta^*(x) for an injection theta: [q] -> [dim x]."""
        p = self.dim(x)
        target = getattr(theta, "target_dim", p)
        if target != p or not perms.is_injection(theta, p):
            raise DimensionError(f"{tuple(theta)} is not an injection into [{p}] (simplex {x!r})")
        missed, tau = perms.factor_injection(theta, p)
        for m in missed:
            x = self.face(x, m)
        return self.pull_perm(x, tau)

    # -- orbits ---------------------------------------------------------------

    def _compute_orbits(self) -> dict[str, Orbit]:
        orbit_of: dict[str, Orbit] = {}
        for p, xs in enumerate(self._simplices):
            for x in xs:
                if x in orbit_of:
                    continue
                seen = {x}
                queue = [x]
                while queue:
                    y = queue.pop()
                    for i in range(p):
                        z = self._act[p][i][y]
                        if z not in seen:
                            seen.add(z)
                            queue.append(z)
                orb = Orbit(p, min(seen), frozenset(seen))
                for y in seen:
                    orbit_of[y] = orb
        return orbit_of

    def orbit(self, x: str) -> Orbit:
        if self._orbit_of is None:
            self._orbit_of = self._compute_orbits()
        try:
            return self._orbit_of[x]
        except KeyError:
            raise KeyError(f"unknown simplex {x!r}") from None

    def orbits(self, p: int | None = None) -> list[Orbit]:
        """Orbits of X_p (or of all simplices), sorted by (dimension, representative)."""
        dims = range(len(self._simplices)) if p is None else [p]
        out = {self.orbit(x) for q in dims for x in self.simplices(q)}
        return sorted(out)

    def transversal(self, orb: Orbit) -> dict[str, Perm]:
        """For each member y of ``orb`` a permutation rho with rho^*(rep) = y."""
        cached = self._transversal_cache.get(orb.rep)
        if cached is not None:
            return cached
        p = orb.dim
        table = {orb.rep: perms.identity(p + 1)}
        queue = deque([orb.rep])
        while queue:
            y = queue.popleft()
            rho = table[y]
            for i in range(p):
                z = self._act[p][i][y]
                if z not in table:
                    # (rho o s_i)^* = s_i^* o rho^*
                    table[z] = perms.compose(rho, perms.transposition(p + 1, i, i + 1))
                    queue.append(z)
        self._transversal_cache[orb.rep] = table
        return table

    def carry_to_rep(self, y: str) -> Perm:
        """A permutation sigma with sigma^*(y) equal to the representative of [y]."""
        orb = self.orbit(y)
        return perms.inverse(self.transversal(orb)[y])

    def action_table(self, x: str, limit: int = DEFAULT_FACTORIAL_LIMIT) -> dict[Perm, str]:
        """rho^*(x) for every permutation rho of [dim x], by walking S_{p+1}."""
        p = self.dim(x)
        if p > limit:
            raise FactorialLimitError(f"dimension {p} exceeds the factorial limit {limit}")
        table = {perms.identity(p + 1): x}
        queue = deque(table)
        gens = [perms.transposition(p + 1, i, i + 1) for i in range(p)]
        while queue:
            rho = queue.popleft()
            y = table[rho]
            for i, s in enumerate(gens):
                sigma = perms.compose(rho, s)
                if sigma not in table:
                    table[sigma] = self._act[p][i][y]
                    queue.append(sigma)
        return table

    def automorphisms(self, x: str, limit: int = DEFAULT_FACTORIAL_LIMIT) -> frozenset[Perm]:
        cached = self._aut_cache.get(x)
        if cached is not None:
            return cached
        table = self.action_table(x, limit)
        group = frozenset(rho for rho, y in table.items() if y == x)
        if len(group) ** 2 <= 10**6:
            for a in group:
                for b in group:
                    if perms.compose(a, b) not in group:
                        raise AssertionError(f"stabilizer of {x!r} is not closed under composition")
        self._aut_cache[x] = group
        return group

    # -- face relation on orbits ----------------------------------------------

    def lower_covers(self, orb: Orbit) -> list[Orbit]:
        """Orbits of codimension-one faces of ``orb``, without repetition."""
        if orb.dim == 0:
            return []
        return sorted({self.orbit(self.face(orb.rep, m)) for m in range(orb.dim + 1)})

    def upper_covers(self, orb: Orbit) -> list[Orbit]:
        return self._upper_index().get(orb, [])

    def _upper_index(self) -> dict[Orbit, list[Orbit]]:
        index = getattr(self, "_upper", None)
        if index is None:
            acc: dict[Orbit, set[Orbit]] = {}
            for beta in self.orbits():
                for alpha in self.lower_covers(beta):
                    acc.setdefault(alpha, set()).add(beta)
            index = {k: sorted(v) for k, v in acc.items()}
            self._upper = index
        return index

    def restrict(self, keep: Iterable[str]) -> "SymmetricDeltaComplex":
        """The sub-presentation on ``keep``, which must be closed under faces and actions."""
        keep = set(keep)
        dims = [p for p in range(len(self._simplices)) if keep & set(self._simplices[p])]
        top = max(dims) if dims else -1
        simplices = [[x for x in self.simplices(p) if x in keep] for p in range(top + 1)]
        acts, fcs = [], []
        for p in range(1, top + 1):
            xs = simplices[p]
            acts.append([{x: self._act[p][i][x] for x in xs} for i in range(p)])
            fcs.append([{x: self._face[p][m][x] for x in xs} for m in range(p + 1)])
        return SymmetricDeltaComplex(simplices, acts, fcs)

    def to_dict(self) -> dict:
        """The structured-text (JSON) form of the presentation."""
        return {
            "max_dim": self.max_dim,
            "simplices": [list(xs) for xs in self._simplices],
            "transpositions": [
                [dict(sorted(a.items())) for a in self._act[p]] for p in range(1, self.max_dim + 1)
            ],
            "faces": [
                [dict(sorted(d.items())) for d in self._face[p]] for p in range(1, self.max_dim + 1)
            ],
        }

    def __eq__(self, other):
        if not isinstance(other, SymmetricDeltaComplex):
            return NotImplemented
        return self.to_dict() == other.to_dict()

    __hash__ = None

    def __repr__(self):
        counts = ", ".join(str(len(xs)) for xs in self._simplices)
        return f"SymmetricDeltaComplex(counts=[{counts}])"


# -- module-level operations -----------------------------------------------------


def validate_complex(X: SymmetricDeltaComplex) -> ValidationReport:
    """Check every relation that makes the presentation a functor."""
    report = ValidationReport()
    add = report.violations.append
    for p in range(1, X.max_dim + 1):
        xs = X.simplices(p)
        for i in range(p):
            for x in xs:
                if X.act(X.act(x, i), i) != x:
                    add(Violation("involution", p, x, f"s_{i} s_{i} != id"))
        for i in range(p - 1):
            for x in xs:
                lhs = X.act(X.act(X.act(x, i), i + 1), i)
                rhs = X.act(X.act(X.act(x, i + 1), i), i + 1)
                if lhs != rhs:
                    add(Violation("braid", p, x, f"s_{i} s_{i + 1} s_{i} != s_{i + 1} s_{i} s_{i + 1}"))
        for i in range(p):
            for j in range(i + 2, p):
                for x in xs:
                    if X.act(X.act(x, i), j) != X.act(X.act(x, j), i):
                        add(Violation("commutation", p, x, f"s_{i} s_{j} != s_{j} s_{i}"))
        if p >= 2:
            for m in range(p + 1):
                for n in range(m):
                    for x in xs:
                        if X.face(X.face(x, m), n) != X.face(X.face(x, n), m - 1):
                            add(Violation("simplicial", p, x, f"d_{n} d_{m} != d_{m - 1} d_{n}"))
        for j in range(p):
            s = perms.transposition(p + 1, j, j + 1)
            for m in range(p + 1):
                m2 = s[m]
                h_m = perms.face_inclusion(p, m)
                h_inv = perms.inverse_on_image(perms.face_inclusion(p, m2))
                tau = tuple(h_inv[v] for v in perms.compose(s, h_m))
                for x in xs:
                    lhs = X.face(X.act(x, j), m)
                    rhs = X.pull_perm(X.face(x, m2), tau)
                    if lhs != rhs:
                        add(Violation("mixed", p, x, f"d_{m}(s_{j} x) != tau' d_{m2}(x)"))
    return report


def pullback(X: SymmetricDeltaComplex, theta: Sequence[int], x: str) -> str:
    return X.pullback(theta, x)


def orbit_of(X: SymmetricDeltaComplex, x: str) -> Orbit:
    return X.orbit(x)


def orbits(X: SymmetricDeltaComplex, p: int) -> list[Orbit]:
    return X.orbits(p)


def automorphisms(X: SymmetricDeltaComplex, x: str, limit: int = DEFAULT_FACTORIAL_LIMIT) -> frozenset[Perm]:
    """Aut(x) = {rho in S_{p+1} : rho^*(x) = x}."""
    return X.automorphisms(x, limit)


def cover_relations(X: SymmetricDeltaComplex) -> set[tuple[Orbit, Orbit]]:
    return {(alpha, beta) for beta in X.orbits() for alpha in X.lower_covers(beta)}


def face_orbit_relation(X: SymmetricDeltaComplex) -> set[tuple[Orbit, Orbit, int]]:
    """All strict face relations between orbits, with codimension."""
    below: dict[Orbit, set[Orbit]] = {}
    for beta in X.orbits():  # increasing dimension, so faces are done first
        acc = set()
        for alpha in X.lower_covers(beta):
            acc.add(alpha)
            acc |= below[alpha]
        below[beta] = acc
    return {(alpha, beta, beta.dim - alpha.dim) for beta, acc in below.items() for alpha in acc}


def subcomplex_generated(X: SymmetricDeltaComplex, S: Iterable[str]) -> SymmetricDeltaComplex:
    """The smallest subcomplex containing ``S``."""
    todo = [X.orbit(x) for x in S]
    seen: set[Orbit] = set()
    while todo:
        orb = todo.pop()
        if orb in seen:
            continue
        seen.add(orb)
        todo.extend(X.lower_covers(orb))
    return X.restrict(y for orb in seen for y in orb.members)


def downward_closure(faces: Iterable[Iterable]) -> set[frozenset]:
    out: set[frozenset] = set()
    for face in faces:
        face = tuple(face)
        for k in range(1, len(face) + 1):
            out.update(frozenset(c) for c in combinations(face, k))
    return out


def from_simplicial_complex(vertices: Sequence, faces: Iterable[Iterable]) -> SymmetricDeltaComplex:
    """Build X_C from an ordered simplicial complex C.

    ``vertices`` fixes the vertex order and ``faces`` must be a downward-closed
    family of nonempty vertex subsets.  A k-simplex of X_C is an ordering of
    the vertices of a k-face; permutations and face maps act by precomposition,
    so s_i swaps positions i and i+1 and d_m deletes position m.  Identifiers
    are the ordered vertex names joined by commas.
    """
    names = [str(v) for v in vertices]
    if len(set(names)) != len(names) or any("," in n for n in names):
        raise PreconditionError("vertex names must be distinct and contain no commas")
    position = {v: i for i, v in enumerate(vertices)}
    family = {frozenset(f) for f in faces}
    family.discard(frozenset())
    for f in family:
        if not f <= position.keys():
            raise PreconditionError(f"face {sorted(f, key=str)} uses unknown vertices")
        for k in range(1, len(f)):
            for sub in combinations(f, k):
                if frozenset(sub) not in family:
                    raise PreconditionError(f"family is not downward closed: missing {sorted(sub, key=str)}")
    top = max((len(f) - 1 for f in family), default=-1)
    simplices: list[list[str]] = [[] for _ in range(top + 1)]
    acts = [[{} for _ in range(p)] for p in range(1, top + 1)]
    fcs = [[{} for _ in range(p + 1)] for p in range(1, top + 1)]

    def ident(seq):
        return ",".join(str(v) for v in seq)

    for f in family:
        p = len(f) - 1
        base = sorted(f, key=position.__getitem__)
        for seq in permutations(base):
            x = ident(seq)
            simplices[p].append(x)
            for i in range(p):
                t = list(seq)
                t[i], t[i + 1] = t[i + 1], t[i]
                acts[p - 1][i][x] = ident(t)
            for m in range(p + 1 if p else 0):
                fcs[p - 1][m][x] = ident(seq[:m] + seq[m + 1:])
    return SymmetricDeltaComplex(simplices, acts, fcs)
