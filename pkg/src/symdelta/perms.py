"""Permutations and injections of the finite ordinals [p] = {0, ..., p}.

A map theta: [q] -> [p] is a tuple ``t`` with ``t[i] = theta(i)``.  Composition
follows function notation: ``compose(a, b)`` is ``a o b``.
"""

from __future__ import annotations

from itertools import permutations
from typing import Iterator, Sequence

Perm = tuple[int, ...]


def identity(n: int) -> Perm:
    return tuple(range(n))


def compose(a: Sequence[int], b: Sequence[int]) -> tuple[int, ...]:
    """Return ``a o b``; ``b`` may be an injection into the domain of ``a``."""
    return tuple(a[j] for j in b)


def inverse(a: Sequence[int]) -> Perm:
    inv = [0] * len(a)
    for i, j in enumerate(a):
        inv[j] = i
    return tuple(inv)


def sign(a: Sequence[int]) -> int:
    seen = [False] * len(a)
    s = 1
    for i in range(len(a)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = a[j]
            length += 1
        if length % 2 == 0:
            s = -s
    return s


def order(a: Sequence[int]) -> int:
    from math import lcm

    seen = [False] * len(a)
    result = 1
    for i in range(len(a)):
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = a[j]
            length += 1
        if length:
            result = lcm(result, length)
    return result


def transposition(n: int, i: int, j: int) -> Perm:
    t = list(range(n))
    t[i], t[j] = j, i
    return tuple(t)


def adjacent_word(a: Sequence[int]) -> list[int]:
    """Factor a permutation into adjacent transpositions.

    Returns ``[w1, ..., wk]`` with ``a = s_wk o ... o s_w1``.  Pulling back along
    ``a`` therefore applies ``s_wk`` first and ``s_w1`` last.
    """
    p = list(a)
    word = []
    changed = True
    while changed:
        changed = False
        for j in range(len(p) - 1):
            if p[j] > p[j + 1]:
                p[j], p[j + 1] = p[j + 1], p[j]
                word.append(j)
                changed = True
    return word


def all_perms(n: int) -> Iterator[Perm]:
    return permutations(range(n))


def face_inclusion(p: int, m: int) -> tuple[int, ...]:
    """The order-preserving injection h_m: [p-1] -> [p] whose image misses m."""
    return tuple(i if i < m else i + 1 for i in range(p))


def all_injections(q: int, p: int) -> Iterator[tuple[int, ...]]:
    """All injections [q] -> [p] in lexicographic order."""
    return permutations(range(p + 1), q + 1)


def factor_injection(theta: Sequence[int], p: int) -> tuple[list[int], Perm]:
    """Write theta: [q] -> [p] as ``h_m1 o ... o h_mk o tau``.

    Returns the missed positions ``[m1, ..., mk]`` in decreasing order and the
    permutation ``tau`` of [q].  Pulling back applies ``d_m1`` first.
    """
    image = sorted(theta)
    missed = sorted(set(range(p + 1)) - set(image), reverse=True)
    rank = {v: i for i, v in enumerate(image)}
    tau = tuple(rank[v] for v in theta)
    return missed, tau


def is_injection(theta: Sequence[int], p: int) -> bool:
    return len(set(theta)) == len(theta) and all(0 <= v <= p for v in theta)


class Injection(tuple):
    """An injection [q] -> [p], stored as its tuple of values.

    ``Injection((0, 2), 2)`` is the map [1] -> [2] sending 0 to 0 and 1 to 2.
    """

    target_dim: int

    def __new__(cls, values: Sequence[int], target_dim: int):
        self = super().__new__(cls, tuple(values))
        if not is_injection(self, target_dim):
            raise ValueError(f"{tuple(values)} is not an injection into [{target_dim}]")
        self.target_dim = target_dim
        return self

    @property
    def source_dim(self) -> int:
        return len(self) - 1

    @property
    def image(self) -> frozenset[int]:
        return frozenset(self)

    def __repr__(self) -> str:
        return f"Injection({tuple(self)}, {self.target_dim})"


def inverse_on_image(theta: Sequence[int]) -> dict[int, int]:
    """theta^{-1} restricted to the image of theta."""
    return {v: i for i, v in enumerate(theta)}
