"""Rational homology of symmetric Delta-complexes.

The chain group in degree p has one basis element per orbit whose
automorphism group is made of even permutations ("live" orbits); an orbit
with an odd automorphism would be identified with its own negative and
vanishes rationally.  The boundary of the representative alpha of a live
p-orbit is the sum over m of (-1)^m * sign(sigma_m) * [rep d_m alpha], where
sigma_m carries d_m alpha onto its orbit representative.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import linalg, perms
from .complex import DEFAULT_FACTORIAL_LIMIT, Orbit, SymmetricDeltaComplex
from .errors import PreconditionError


@dataclass
class OrbitChainComplex:
    basis: list[list[Orbit]]
    # boundaries[p] has one row per basis[p - 1] element and one column per basis[p] element
    boundaries: list[list[list[Fraction]]]

    def rank_of_boundary(self, p: int) -> int:
        if p <= 0 or p >= len(self.basis):
            return 0
        return linalg.rank(self.boundaries[p])


def is_live(X: SymmetricDeltaComplex, orb: Orbit, limit: int = DEFAULT_FACTORIAL_LIMIT) -> bool:
    return all(perms.sign(rho) == 1 for rho in X.automorphisms(orb.rep, limit))


def orbit_chain_complex(X: SymmetricDeltaComplex, limit: int = DEFAULT_FACTORIAL_LIMIT) -> OrbitChainComplex:
    basis = [[o for o in X.orbits(p) if is_live(X, o, limit)] for p in range(X.max_dim + 1)]
    boundaries: list[list[list[Fraction]]] = [[]]
    for p in range(1, X.max_dim + 1):
        index = {o: i for i, o in enumerate(basis[p - 1])}
        mat = [[Fraction(0)] * len(basis[p]) for _ in basis[p - 1]]
        for j, orb in enumerate(basis[p]):
            for m in range(p + 1):
                y = X.face(orb.rep, m)
                row = index.get(X.orbit(y))
                if row is None:
                    continue
                mat[row][j] += (-1) ** m * perms.sign(X.carry_to_rep(y))
        boundaries.append(mat)
    for p in range(2, X.max_dim + 1):
        if basis[p] and basis[p - 2]:
            product = linalg.matmul(boundaries[p - 1], boundaries[p])
            if any(v != 0 for row in product for v in row):
                raise AssertionError(f"boundary squared is nonzero in degree {p}")
    return OrbitChainComplex(basis, boundaries)


def betti(X: SymmetricDeltaComplex, limit: int = DEFAULT_FACTORIAL_LIMIT) -> list[int]:
    cc = orbit_chain_complex(X, limit)
    return [
        len(cc.basis[p]) - cc.rank_of_boundary(p) - cc.rank_of_boundary(p + 1)
        for p in range(len(cc.basis))
    ]


def reduced_betti(X: SymmetricDeltaComplex, limit: int = DEFAULT_FACTORIAL_LIMIT) -> list[int]:
    if X.is_empty():
        raise PreconditionError("reduced Betti numbers of the empty complex are not defined here")
    b = betti(X, limit)
    b[0] -= 1
    return b


def euler_characteristic(X: SymmetricDeltaComplex, limit: int = DEFAULT_FACTORIAL_LIMIT) -> int:
    cc = orbit_chain_complex(X, limit)
    return sum((-1) ** p * len(b) for p, b in enumerate(cc.basis))
