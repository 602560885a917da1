"""Permissible codimension-one faces and the induced maps f_rho: Aut(beta) -> Aut(alpha)."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from . import perms
from .complex import DEFAULT_FACTORIAL_LIMIT, Orbit, SymmetricDeltaComplex
from .errors import DimensionError, FactorialLimitError, PreconditionError
from .perms import Injection, Perm

PERMISSIBLE = "permissible"
NO_FACE = "no-face"
IMAGES_DIFFER = "images-differ"
NOT_BIJECTIVE = "f-not-bijective"


@dataclass
class PermissibilityCertificate:
    alpha: str
    beta: str
    gluings: list[Injection]
    common_image: Optional[frozenset[int]]  # None when the images differ
    f_table: dict[Perm, Perm] = field(default_factory=dict)
    reason: Optional[str] = None  # None means permissible

    @property
    def permissible(self) -> bool:
        return self.reason is None

    @property
    def verdict(self) -> str:
        return PERMISSIBLE if self.reason is None else self.reason

    def to_dict(self) -> dict:
        return {
            "alpha": self.alpha,
            "beta": self.beta,
            "verdict": self.verdict,
            "gluings": [list(t) for t in self.gluings],
            "common_image": None if self.common_image is None else sorted(self.common_image),
            "f_rho": [[list(k), list(v)] for k, v in sorted(self.f_table.items())],
        }


def _check_dims(X, alpha, beta, limit):
    p = X.dim(alpha)
    if X.dim(beta) != p + 1:
        raise DimensionError(f"dim {beta!r} = {X.dim(beta)} is not dim {alpha!r} + 1 = {p + 1}")
    if p + 1 > limit:
        raise FactorialLimitError(f"dimension {p + 1} exceeds the factorial limit {limit}")
    return p


def gluing_injections(
    X: SymmetricDeltaComplex, alpha: str, beta: str, limit: int = DEFAULT_FACTORIAL_LIMIT
) -> list[Injection]:
    """Every injection theta: [p] -> [p+1] with theta^*(beta) = alpha, sorted.

    Each injection is h_m o tau for a unique missed position m and permutation
    tau, so all (p+2)! candidates are covered by walking S_{p+1} once per m.
    """
    p = _check_dims(X, alpha, beta, limit)
    found = []
    for m in range(p + 2):
        y = X.face(beta, m)
        if X.orbit(y) != X.orbit(alpha):
            continue
        h_m = perms.face_inclusion(p + 1, m)
        for tau, z in X.action_table(y, limit).items():
            if z == alpha:
                found.append(Injection(perms.compose(h_m, tau), p + 1))
    return sorted(found)


def f_rho(rho: Perm, pi: Perm) -> Perm:
    """rho^{-1}|_{Im rho} o pi o rho, a permutation of [p]."""
    back = perms.inverse_on_image(rho)
    return tuple(back[pi[v]] for v in rho)


def is_permissible(
    X: SymmetricDeltaComplex, alpha: str, beta: str, limit: int = DEFAULT_FACTORIAL_LIMIT
) -> PermissibilityCertificate:
    gluings = gluing_injections(X, alpha, beta, limit)
    if not gluings:
        return PermissibilityCertificate(alpha, beta, [], None, reason=NO_FACE)
    images = {g.image for g in gluings}
    if len(images) > 1:
        return PermissibilityCertificate(alpha, beta, gluings, None, reason=IMAGES_DIFFER)
    image = images.pop()
    rho = gluings[0]
    aut_alpha = X.automorphisms(alpha, limit)
    table = {}
    for pi in sorted(X.automorphisms(beta, limit)):
        if {pi[v] for v in image} != image:
            raise AssertionError(f"{pi} does not preserve the common image {sorted(image)}")
        g = f_rho(rho, pi)
        if g not in aut_alpha:
            raise AssertionError(f"f_rho({pi}) = {g} is not an automorphism of {alpha!r}")
        table[pi] = g
    bijective = len(set(table.values())) == len(table) == len(aut_alpha)
    return PermissibilityCertificate(
        alpha, beta, gluings, image, table, reason=None if bijective else NOT_BIJECTIVE
    )


class PermissibilityOracle:
    """Per-orbit-pair cache of permissibility verdicts on one complex.

    Permissibility is constant on orbit pairs, so one representative pair is
    examined per cover and the certificate reused.
    """

    def __init__(self, X: SymmetricDeltaComplex, limit: int = DEFAULT_FACTORIAL_LIMIT):
        self.X = X
        self.limit = limit
        self._cache: dict[tuple[Orbit, Orbit], PermissibilityCertificate] = {}

    def certificate(self, lower: Orbit, upper: Orbit) -> PermissibilityCertificate:
        key = (lower, upper)
        cert = self._cache.get(key)
        if cert is None:
            cert = is_permissible(self.X, lower.rep, upper.rep, self.limit)
            self._cache[key] = cert
        return cert

    def __call__(self, lower: Orbit, upper: Orbit) -> bool:
        return self.certificate(lower, upper).permissible

    def table(self) -> list[tuple[Orbit, Orbit, PermissibilityCertificate]]:
        rows = []
        for upper in self.X.orbits():
            for lower in self.X.lower_covers(upper):
                rows.append((lower, upper, self.certificate(lower, upper)))
        return sorted(rows, key=lambda r: (r[0], r[1]))


def oracle_for(X: SymmetricDeltaComplex, limit: int = DEFAULT_FACTORIAL_LIMIT) -> PermissibilityOracle:
    """The shared oracle attached to ``X`` (created on first use)."""
    oracle = getattr(X, "_permissibility_oracle", None)
    if oracle is None or oracle.limit != limit:
        oracle = PermissibilityOracle(X, limit)
        X._permissibility_oracle = oracle
    return oracle


def permissible_pairs(X: SymmetricDeltaComplex) -> set[tuple[Orbit, Orbit]]:
    return {(lo, up) for lo, up, cert in oracle_for(X).table() if cert.permissible}


def _first_gluing(X, gamma, alpha) -> tuple[int, ...]:
    r, p = X.dim(gamma), X.dim(alpha)
    for theta in perms.all_injections(r, p):
        if X.pullback(theta, alpha) == gamma:
            return theta
    raise PreconditionError(f"{gamma!r} is not a face of {alpha!r}")


def permissible_cover_witness(X: SymmetricDeltaComplex, gamma: str, alpha: str, beta: str) -> str:
    """Given gamma < alpha < beta with alpha a permissible face of beta, return
    a p-simplex alpha' outside [alpha] with gamma < alpha' < beta.

    With f gluing gamma to alpha and g gluing alpha to beta, g' agrees with g
    except that it sends the least k outside Im f to the position l missed by
    g; then alpha' = g'^*(beta).
    """
    r, p = X.dim(gamma), X.dim(alpha)
    if not r < p:
        raise PreconditionError(f"need dim {gamma!r} < dim {alpha!r}")
    if X.dim(beta) != p + 1:
        raise PreconditionError(f"need dim {beta!r} = dim {alpha!r} + 1")
    cert = is_permissible(X, alpha, beta)
    if not cert.permissible:
        raise PreconditionError(f"{alpha!r} is not a permissible face of {beta!r} ({cert.verdict})")
    f = _first_gluing(X, gamma, alpha)
    g = cert.gluings[0]
    (l,) = set(range(p + 2)) - set(g)
    k = min(set(range(p + 1)) - set(f))
    g2 = tuple(l if i == k else g[i] for i in range(p + 1))
    alpha2 = X.pullback(g2, beta)
    assert X.pullback(f, alpha2) == gamma
    assert X.orbit(alpha2) != X.orbit(alpha)
    return alpha2
