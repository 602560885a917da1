"""Permissible acyclic matchings on the Hasse diagram of the orbit poset."""

from __future__ import annotations

import heapq
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional

from .complex import Orbit, SymmetricDeltaComplex
from .errors import InvalidMatchingError, UnknownOrbitError
from .morse import DiscreteMorseFunction, exception_pairs, _require_valid
from .permissibility import oracle_for

Pair = tuple[Orbit, Orbit]  # (lower, upper)


@dataclass
class OrbitHasse:
    vertices: list[Orbit]
    edges: list[tuple[Orbit, Orbit]]  # (upper, lower), oriented downwards
    permissible: dict[Pair, bool]

    def digraph(self, matched: Iterable[Pair] = ()) -> dict[Orbit, list[Orbit]]:
        """Adjacency lists with the edges of ``matched`` pointing upwards."""
        matched = set(matched)
        adj: dict[Orbit, list[Orbit]] = {v: [] for v in self.vertices}
        for upper, lower in self.edges:
            if (lower, upper) in matched:
                adj[lower].append(upper)
            else:
                adj[upper].append(lower)
        return adj


def build_hasse(X: SymmetricDeltaComplex) -> OrbitHasse:
    permissible = oracle_for(X)
    vertices = X.orbits()
    edges = []
    flags = {}
    for upper in vertices:
        for lower in X.lower_covers(upper):
            edges.append((upper, lower))
            flags[(lower, upper)] = permissible(lower, upper)
    edges.sort(key=lambda e: (e[1], e[0]))
    return OrbitHasse(vertices, edges, flags)


@dataclass(frozen=True)
class Matching:
    pairs: frozenset[Pair] = frozenset()

    @classmethod
    def of(cls, pairs: Iterable[Pair]) -> "Matching":
        return cls(frozenset((lo, up) for lo, up in pairs))

    def __len__(self):
        return len(self.pairs)

    def __iter__(self):
        return iter(sorted(self.pairs))

    def matched_orbits(self) -> set[Orbit]:
        return {o for pair in self.pairs for o in pair}

    def up(self, lower: Orbit) -> Optional[Orbit]:
        return next((u for lo, u in self.pairs if lo == lower), None)

    def down(self, upper: Orbit) -> Optional[Orbit]:
        return next((lo for lo, u in self.pairs if u == upper), None)

    def to_list(self) -> list[list[str]]:
        return [[lo.rep, up.rep] for lo, up in sorted(self.pairs)]


def find_cycle(adj: dict[Orbit, list[Orbit]]) -> Optional[list[Orbit]]:
    """A directed cycle ``[v0, v1, ..., v0]`` if one exists."""
    WHITE, GREY, BLACK = 0, 1, 2
    colour = {v: WHITE for v in adj}
    for root in sorted(adj):
        if colour[root] != WHITE:
            continue
        stack = [(root, iter(adj[root]))]
        path = [root]
        colour[root] = GREY
        while stack:
            v, it = stack[-1]
            w = next(it, None)
            if w is None:
                colour[v] = BLACK
                stack.pop()
                path.pop()
            elif colour[w] == GREY:
                return path[path.index(w):] + [w]
            elif colour[w] == WHITE:
                colour[w] = GREY
                stack.append((w, iter(adj[w])))
                path.append(w)
    return None


@dataclass
class MatchingReport:
    problems: list[tuple[str, str]] = field(default_factory=list)
    cycle: Optional[list[Orbit]] = None

    @property
    def valid(self) -> bool:
        return not self.problems

    def to_dict(self) -> dict:
        return {
            "valid": self.valid,
            "problems": [{"kind": k, "detail": d} for k, d in self.problems],
            "cycle": None if self.cycle is None else [o.rep for o in self.cycle],
        }


def validate_matching(X: SymmetricDeltaComplex, M: Matching) -> MatchingReport:
    known = set(X.orbits())
    for lo, up in M.pairs:
        for o in (lo, up):
            if o not in known:
                raise UnknownOrbitError(f"orbit {o} is not an orbit of the complex")
    report = MatchingReport()
    seen: dict[Orbit, Pair] = {}
    permissible = oracle_for(X)
    for lo, up in sorted(M.pairs):
        for o in (lo, up):
            if o in seen:
                report.problems.append(("not-a-matching", f"{o} is in both {_fmt(seen[o])} and {_fmt((lo, up))}"))
            else:
                seen[o] = (lo, up)
        if up.dim != lo.dim + 1 or lo not in X.lower_covers(up):
            report.problems.append(("not-a-cover", f"{_fmt((lo, up))} is not a cover relation"))
        elif not permissible(lo, up):
            report.problems.append(("not-permissible", f"{lo} < {up} is not permissible"))
    cycle = find_cycle(build_hasse(X).digraph(M.pairs))
    if cycle is not None:
        report.cycle = cycle
        report.problems.append(("cyclic", " -> ".join(map(str, cycle))))
    return report


def _fmt(pair):
    return f"({pair[0]}, {pair[1]})"


def _require_valid_matching(X, M) -> None:
    report = validate_matching(X, M)
    if not report.valid:
        raise InvalidMatchingError(
            "invalid matching: " + "; ".join(f"{k}: {d}" for k, d in report.problems), report
        )


def dmf_to_matching(X: SymmetricDeltaComplex, f: DiscreteMorseFunction) -> Matching:
    _require_valid(X, f)
    M = Matching.of(exception_pairs(X, f))
    assert validate_matching(X, M).valid
    return M


def matching_to_dmf(X: SymmetricDeltaComplex, M: Matching) -> DiscreteMorseFunction:
    """A function strictly decreasing along every edge of the modified Hasse digraph.

    Orbits are taken in Kahn order (ties broken by orbit order) and the i-th
    of N orbits receives the value N - 1 - i.
    """
    _require_valid_matching(X, M)
    adj = build_hasse(X).digraph(M.pairs)
    indegree = {v: 0 for v in adj}
    for v in adj:
        for w in adj[v]:
            indegree[w] += 1
    heap = [v for v, n in indegree.items() if n == 0]
    heapq.heapify(heap)
    order = []
    while heap:
        v = heapq.heappop(heap)
        order.append(v)
        for w in adj[v]:
            indegree[w] -= 1
            if indegree[w] == 0:
                heapq.heappush(heap, w)
    assert len(order) == len(adj)
    n = len(order)
    return DiscreteMorseFunction({v: Fraction(n - 1 - i) for i, v in enumerate(order)})


def _reaches(adj, source, target, skip) -> bool:
    """Whether ``target`` is reachable from ``source`` without using edge ``skip``."""
    seen = {source}
    stack = [source]
    while stack:
        v = stack.pop()
        for w in adj[v]:
            if (v, w) == skip:
                continue
            if w == target:
                return True
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return False


def search_matching(X: SymmetricDeltaComplex, seed: int = 0) -> Matching:
    """Greedy maximal permissible acyclic matching.

    Permissible covers are shuffled by ``seed`` and added whenever both ends
    are free and reversing the edge closes no directed cycle.  Passes repeat
    until nothing more can be added, since a reversal can break the path that
    blocked an earlier candidate.
    """
    hasse = build_hasse(X)
    candidates = sorted(pair for pair, ok in hasse.permissible.items() if ok)
    random.Random(seed).shuffle(candidates)
    adj = hasse.digraph()
    used: set[Orbit] = set()
    pairs: set[Pair] = set()
    changed = True
    while changed:
        changed = False
        for lo, up in candidates:
            if lo in used or up in used:
                continue
            if _reaches(adj, up, lo, skip=(up, lo)):
                continue
            adj[up].remove(lo)
            adj[lo].append(up)
            assert find_cycle(adj) is None
            used.update((lo, up))
            pairs.add((lo, up))
            changed = True
    return Matching(frozenset(pairs))


def is_maximal(X: SymmetricDeltaComplex, M: Matching) -> bool:
    """No permissible cover can be added while keeping a valid matching."""
    hasse = build_hasse(X)
    used = M.matched_orbits()
    for (lo, up), ok in hasse.permissible.items():
        if ok and lo not in used and up not in used:
            if find_cycle(hasse.digraph(M.pairs | {(lo, up)})) is None:
                return False
    return True


def unmatched_orbits(X: SymmetricDeltaComplex, M: Matching) -> list[Orbit]:
    used = M.matched_orbits()
    return [o for o in X.orbits() if o not in used]
