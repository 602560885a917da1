"""Regular matroids and the coloop subcomplex of the link of the perfect cone
moduli space A_g^trop for small g.

A simplex of dimension n is a simple regular matroid on the label set [n]
(a matroid together with a labelling of its elements, up to relabelling by
automorphisms).  Adjacent transpositions swap two labels; the face map d_m
deletes the element labelled m and shifts larger labels down.  Matroid
isomorphism classes are the orbits.

All simple regular matroids of rank at most 3 are graphic, so for g <= 3 the
complex is built from graphs: every graphic matroid of rank r comes from a
connected simple graph on r + 1 vertices.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations, permutations
from typing import Iterable, Iterator, Optional, Sequence

from . import linalg, perms
from .complex import Orbit, SymmetricDeltaComplex
from .errors import InvalidMatchingError, PreconditionError
from .homology import reduced_betti
from .matching import Matching, unmatched_orbits, validate_matching
from .permissibility import oracle_for

IntegerMatrix = tuple[tuple[int, ...], ...]

MAX_ISO_GROUND = 10


# -- matrices ----------------------------------------------------------------------


def as_matrix(rows: Iterable[Iterable[int]]) -> IntegerMatrix:
    return tuple(tuple(int(v) for v in row) for row in rows)


def is_totally_unimodular(A: Sequence[Sequence[int]]) -> bool:
    """Every square minor is -1, 0 or 1 (exhaustive)."""
    if not A or not A[0]:
        return True
    g, n = len(A), len(A[0])
    for k in range(1, min(g, n) + 1):
        for rows in combinations(range(g), k):
            sub = [A[i] for i in rows]
            for cols in combinations(range(n), k):
                if linalg.det(linalg.columns(sub, cols)) not in (-1, 0, 1):
                    return False
    return True


def is_simple_representation(A: Sequence[Sequence[int]]) -> bool:
    cols = list(zip(*A))
    if any(not any(c) for c in cols):
        return False
    seen = set()
    for c in cols:
        neg = tuple(-v for v in c)
        if c in seen or neg in seen:
            return False
        seen.add(c)
    return True


def cone_rank_check(A: Sequence[Sequence[int]]) -> bool:
    """rank(sum_i v_i v_i^t) == rank(A) for the columns v_i of A."""
    gram = linalg.matmul(A, linalg.transpose(A))
    return linalg.rank(gram) == linalg.rank(A)


# -- matroids ----------------------------------------------------------------------


@dataclass(frozen=True)
class Matroid:
    ground: frozenset[int]
    circuits: frozenset[frozenset[int]]

    @classmethod
    def make(cls, ground: Iterable[int], circuits: Iterable[Iterable[int]]) -> "Matroid":
        return cls(frozenset(ground), frozenset(frozenset(c) for c in circuits))

    def __len__(self):
        return len(self.ground)

    def check_axioms(self) -> None:
        for c in self.circuits:
            if not c:
                raise ValueError("the empty set is not a circuit")
            if not c <= self.ground:
                raise ValueError(f"circuit {sorted(c)} leaves the ground set")
        for c1 in self.circuits:
            for c2 in self.circuits:
                if c1 < c2:
                    raise ValueError(f"(C1) fails: {sorted(c1)} is inside {sorted(c2)}")
        for c1, c2 in combinations(self.circuits, 2):
            for e in c1 & c2:
                rest = (c1 | c2) - {e}
                if not any(c <= rest for c in self.circuits):
                    raise ValueError(f"(C2) fails for {sorted(c1)}, {sorted(c2)} at {e}")

    def is_independent(self, s: Iterable[int]) -> bool:
        s = frozenset(s)
        return not any(c <= s for c in self.circuits)


def rank(M: Matroid) -> int:
    """Size of a basis, grown greedily (valid in any matroid)."""
    basis: set[int] = set()
    for e in sorted(M.ground):
        if M.is_independent(basis | {e}):
            basis.add(e)
    return len(basis)


def coloops(M: Matroid) -> frozenset[int]:
    return M.ground - frozenset().union(*M.circuits)


def is_simple(M: Matroid) -> bool:
    return all(len(c) > 2 for c in M.circuits)


def delete(M: Matroid, e: int) -> Matroid:
    if e not in M.ground:
        raise KeyError(f"element {e} is not in the ground set")
    return Matroid(M.ground - {e}, frozenset(c for c in M.circuits if e not in c))


def relabel(M: Matroid, mapping: dict[int, int]) -> Matroid:
    return Matroid.make((mapping[e] for e in M.ground), ((mapping[e] for e in c) for c in M.circuits))


def normalize(M: Matroid) -> Matroid:
    """Relabel the ground set to 0..n-1 preserving order."""
    return relabel(M, {e: i for i, e in enumerate(sorted(M.ground))})


def direct_sum(M: Matroid, N: Matroid) -> Matroid:
    """Disjoint union; N's elements are shifted past max(M)."""
    shift = max(M.ground, default=-1) + 1 - min(N.ground, default=0)
    N2 = relabel(N, {e: e + shift for e in N.ground})
    return Matroid(M.ground | N2.ground, M.circuits | N2.circuits)


def uniform_free(n: int) -> Matroid:
    """U_{n,n}: n elements, no circuits."""
    return Matroid.make(range(n), [])


def matroid_from_matrix(A: Sequence[Sequence[int]]) -> Matroid:
    """Circuits are the minimal linearly dependent sets of columns."""
    if not is_totally_unimodular(A):
        raise PreconditionError("matrix is not totally unimodular")
    n = len(A[0]) if A else 0
    r = linalg.rank(A) if n else 0
    circuits: list[frozenset[int]] = []
    for k in range(1, r + 2):
        for cols in combinations(range(n), k):
            s = frozenset(cols)
            if any(c <= s for c in circuits):
                continue
            if linalg.rank(linalg.columns(A, cols)) < k:
                circuits.append(s)
    M = Matroid.make(range(n), circuits)
    M.check_axioms()
    return M


def inflate(M: Matroid, g: int) -> Matroid:
    """Add a new coloop: M + U_{1,1}."""
    if rank(M) >= g:
        raise PreconditionError(f"cannot inflate: rank {rank(M)} is not below g = {g}")
    if coloops(M):
        raise PreconditionError("cannot inflate a matroid that already has a coloop")
    return direct_sum(M, uniform_free(1))


def deflate(M: Matroid) -> Matroid:
    cl = coloops(M)
    if len(cl) != 1:
        raise PreconditionError(f"deflation needs exactly one coloop, found {len(cl)}")
    return delete(M, next(iter(cl)))


def _signature(M: Matroid):
    return {e: tuple(sorted(len(c) for c in M.circuits if e in c)) for e in M.ground}


def _isomorphisms(M: Matroid, N: Matroid) -> Iterator[dict[int, int]]:
    if max(len(M), len(N)) > MAX_ISO_GROUND:
        raise ValueError(f"ground set larger than {MAX_ISO_GROUND}")
    if len(M) != len(N) or len(M.circuits) != len(N.circuits):
        return
    if sorted(map(len, M.circuits)) != sorted(map(len, N.circuits)):
        return
    sig_m, sig_n = _signature(M), _signature(N)
    if sorted(sig_m.values()) != sorted(sig_n.values()):
        return
    order = sorted(M.ground, key=lambda e: (-len(sig_m[e]), sig_m[e], e))
    # circuits of M that become fully assigned at each step
    done_at: list[list[frozenset[int]]] = [[] for _ in order]
    position = {e: i for i, e in enumerate(order)}
    for c in M.circuits:
        done_at[max(position[e] for e in c)].append(c)
    assignment: dict[int, int] = {}
    used: set[int] = set()

    def extend(i):
        if i == len(order):
            yield dict(assignment)
            return
        e = order[i]
        for t in sorted(N.ground):
            if t in used or sig_n[t] != sig_m[e]:
                continue
            assignment[e] = t
            used.add(t)
            if all(frozenset(assignment[x] for x in c) in N.circuits for c in done_at[i]):
                yield from extend(i + 1)
            used.discard(t)
            del assignment[e]

    yield from extend(0)


def matroid_isomorphic(M: Matroid, N: Matroid) -> Optional[dict[int, int]]:
    return next(_isomorphisms(M, N), None)


def matroid_automorphisms(M: Matroid) -> list[dict[int, int]]:
    return list(_isomorphisms(M, M))


def describe(M: Matroid) -> str:
    k = len(coloops(M))
    if not M.circuits:
        return f"U({k},{k})"
    name = "M[" + ",".join(str(len(c)) for c in sorted(M.circuits, key=lambda c: (len(c), sorted(c)))) + "]"
    return name + (f"+U({k},{k})" if k else "")


# -- graphs --------------------------------------------------------------------------


def connected_graphs(n_vertices: int) -> Iterator[tuple[tuple[int, int], ...]]:
    """Edge sets of connected simple graphs spanning vertices 0..n-1."""
    all_edges = list(combinations(range(n_vertices), 2))
    for k in range(n_vertices - 1, len(all_edges) + 1):
        for edges in combinations(all_edges, k):
            if _connected(n_vertices, edges):
                yield edges


def _connected(n, edges):
    adj = {v: set() for v in range(n)}
    for a, b in edges:
        adj[a].add(b)
        adj[b].add(a)
    seen, stack = {0}, [0]
    while stack:
        for w in adj[stack.pop()]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == n


def incidence_matrix(edges: Sequence[tuple[int, int]], n_vertices: int, g: int) -> IntegerMatrix:
    """Signed incidence matrix without the last vertex row, padded to g rows."""
    rows = [[0] * len(edges) for _ in range(g)]
    for j, (a, b) in enumerate(edges):
        for v, s in ((a, 1), (b, -1)):
            if v < n_vertices - 1:
                rows[v][j] = s
    return as_matrix(rows)


# -- the coloop complex --------------------------------------------------------------


def in_coloop_locus(M: Matroid, g: int) -> bool:
    """Rank below g, or rank g with at least one coloop."""
    r = rank(M)
    return r < g or (r == g and bool(coloops(M)))


def labeled_id(size: int, circuits: Iterable[Iterable[int]]) -> str:
    body = "|".join("-".join(map(str, c)) for c in sorted(tuple(sorted(c)) for c in circuits))
    return f"{size}:{body}"


@dataclass
class MatroidClass:
    matroid: Matroid  # ground 0..n-1
    matrix: IntegerMatrix
    edges: tuple[tuple[int, int], ...]
    rank: int
    coloops: int
    aut_order: int
    name: str

    @property
    def dim(self) -> int:
        return len(self.matroid) - 1


@dataclass
class CensusEntry:
    dim: int
    rep: str
    name: str
    rank: int
    coloops: int
    aut_order: int
    edges: tuple[tuple[int, int], ...]

    def to_dict(self) -> dict:
        return {
            "dim": self.dim, "rep": self.rep, "name": self.name, "rank": self.rank,
            "coloops": self.coloops, "aut_order": self.aut_order, "edges": [list(e) for e in self.edges],
        }


@dataclass
class Census:
    g: int
    entries: list[CensusEntry]
    classes: dict[Orbit, MatroidClass]
    labeled: dict[str, Matroid]  # simplex id -> labelled matroid on [n]
    representations: list[IntegerMatrix] = field(default_factory=list)

    def counts(self) -> list[int]:
        top = max((e.dim for e in self.entries), default=-1)
        return [sum(1 for e in self.entries if e.dim == p) for p in range(top + 1)]

    def orbit_of_matroid(self, X: SymmetricDeltaComplex, M: Matroid) -> Optional[Orbit]:
        for orb, cls in self.classes.items():
            if matroid_isomorphic(cls.matroid, normalize(M)) is not None:
                return orb
        return None


def _check_g(g, allow_g4):
    if g in (2, 3) or (g == 4 and allow_g4):
        return
    if g == 4:
        raise PreconditionError("g = 4 requires allow_g4=True")
    raise PreconditionError(f"g = {g} is outside the supported range 2..3")


def matroid_classes(g: int) -> tuple[list[MatroidClass], list[IntegerMatrix]]:
    """Isomorphism classes of simple graphic matroids in the coloop locus, plus
    every representing matrix met during the enumeration."""
    classes: list[MatroidClass] = []
    seen_matrices: list[IntegerMatrix] = []
    for r in range(1, g + 1):
        for edges in connected_graphs(r + 1):
            A = incidence_matrix(edges, r + 1, g)
            seen_matrices.append(A)
            M = matroid_from_matrix(A)
            if not in_coloop_locus(M, g):
                continue
            if any(c.rank == r and matroid_isomorphic(c.matroid, M) is not None for c in classes):
                continue
            classes.append(
                MatroidClass(M, A, edges, rank(M), len(coloops(M)), len(matroid_automorphisms(M)), describe(M))
            )
    return classes, seen_matrices


def _labelings(M: Matroid) -> dict[str, Matroid]:
    n = len(M)
    out = {}
    for lam in permutations(range(n)):
        circuits = [frozenset(lam[e] for e in c) for c in M.circuits]
        x = labeled_id(n, circuits)
        if x not in out:
            out[x] = Matroid.make(range(n), circuits)
    return out


def _swap(L: Matroid, i: int) -> Matroid:
    s = {e: e for e in L.ground}
    s[i], s[i + 1] = i + 1, i
    return relabel(L, s)


def _delete_label(L: Matroid, m: int) -> Matroid:
    D = delete(L, m)
    return relabel(D, {e: e - (e > m) for e in D.ground})


def _id_of(L: Matroid) -> str:
    return labeled_id(len(L), L.circuits)


@lru_cache(maxsize=None)
def enumerate_coloop_complex(g: int, allow_g4: bool = False) -> tuple[SymmetricDeltaComplex, Census]:
    _check_g(g, allow_g4)
    classes, matrices = matroid_classes(g)
    labeled: dict[str, Matroid] = {}
    class_of_id: dict[str, MatroidClass] = {}
    for cls in classes:
        for x, L in _labelings(cls.matroid).items():
            labeled[x] = L
            class_of_id[x] = cls
    top = max(cls.dim for cls in classes)
    simplices = [[x for x, L in labeled.items() if len(L) == p + 1] for p in range(top + 1)]
    acts, fcs = [], []
    for p in range(1, top + 1):
        acts.append([{x: _id_of(_swap(labeled[x], i)) for x in simplices[p]} for i in range(p)])
        block = []
        for m in range(p + 1):
            d = {}
            for x in simplices[p]:
                y = _id_of(_delete_label(labeled[x], m))
                if y not in labeled:
                    raise AssertionError(f"face d_{m}({x}) = {y} left the coloop locus")
                d[x] = y
            block.append(d)
        fcs.append(block)
    X = SymmetricDeltaComplex(simplices, acts, fcs)
    orbit_class = {}
    for cls in classes:
        orb = X.orbit(next(x for x, c in class_of_id.items() if c is cls))
        orbit_class[orb] = cls
    entries = [
        CensusEntry(orb.dim, orb.rep, cls.name, cls.rank, cls.coloops, cls.aut_order, cls.edges)
        for orb, cls in sorted(orbit_class.items())
    ]
    return X, Census(g, entries, orbit_class, labeled, matrices)


def coloop_matching(g: int, allow_g4: bool = False) -> Matching:
    """Pair each coloop-free orbit of rank below g with its inflation."""
    X, census = enumerate_coloop_complex(g, allow_g4)
    pairs = []
    for orb, cls in sorted(census.classes.items()):
        if cls.rank < g and cls.coloops == 0:
            L = census.labeled[orb.rep]
            up = labeled_id(len(L) + 1, L.circuits)
            pairs.append((orb, X.orbit(up)))
    M = Matching.of(pairs)
    report = validate_matching(X, M)
    if not report.valid:
        raise InvalidMatchingError("inflation matching is not a permissible acyclic matching", report)
    return M


@dataclass
class ColoopCertificate:
    g: int
    clauses: dict[str, tuple[bool, str]]

    @property
    def ok(self) -> bool:
        return all(passed for passed, _ in self.clauses.values())

    def to_dict(self) -> dict:
        return {
            "g": self.g,
            "ok": self.ok,
            "clauses": {k: {"passed": p, "detail": d} for k, (p, d) in self.clauses.items()},
        }


def _reflection(X: SymmetricDeltaComplex, L: Matroid, rep: str) -> Optional[tuple[int, int]]:
    aut = X.automorphisms(rep)
    cl = sorted(coloops(L))
    for i, j in combinations(cl, 2):
        if perms.transposition(len(L), i, j) in aut:
            return (i, j)
    return None


def certify_coloop(g: int, allow_g4: bool = False) -> ColoopCertificate:
    X, census = enumerate_coloop_complex(g, allow_g4)
    clauses: dict[str, tuple[bool, str]] = {}

    # (a) the inflation pairs form a permissible acyclic matching
    try:
        S = coloop_matching(g, allow_g4)
    except InvalidMatchingError as exc:
        clauses["a"] = (False, str(exc))
        S = Matching()
    else:
        permissible = oracle_for(X)
        bad = []
        for lo, up in S:
            cert = permissible.certificate(lo, up)
            if not cert.permissible or len(X.automorphisms(lo.rep)) != len(X.automorphisms(up.rep)):
                bad.append(f"({lo}, {up})")
            if census.classes[up].coloops != 1:
                bad.append(f"{up} does not have exactly one coloop")
        clauses["a"] = (not bad, f"{len(S)} pairs" if not bad else "; ".join(bad))

    # (b) unmatched orbits are the point and the orbits with two or more coloops
    unmatched = set(unmatched_orbits(X, S))
    expected = {o for o, c in census.classes.items() if c.coloops >= 2 or len(c.matroid) == 1}
    clauses["b"] = (
        unmatched == expected,
        "unmatched: " + ", ".join(census.classes[o].name for o in sorted(unmatched)),
    )

    # (c) every unmatched orbit other than the point has a reflection swapping two coloops
    missing = []
    found = []
    for o in sorted(unmatched):
        if o.dim == 0:
            continue
        r = _reflection(X, census.labeled[o.rep], o.rep)
        if r is None:
            missing.append(census.classes[o].name)
        else:
            found.append(f"{census.classes[o].name}: ({r[0]} {r[1]})")
    clauses["c"] = (not missing, "; ".join(found) if not missing else "no reflection: " + ", ".join(missing))

    # (d) rational homology of a point
    rb = reduced_betti(X)
    clauses["d"] = (all(b == 0 for b in rb), f"reduced betti {rb}")
    return ColoopCertificate(g, clauses)
