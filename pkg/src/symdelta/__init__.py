"""Discrete Morse theory for symmetric Delta-complexes."""

from .collapse import (
    Attach,
    Collapse,
    GroupFingerprint,
    MorseModel,
    certify_contractible_by_collapse,
    collapse_by_dmf,
    collapse_by_matching,
)
from .complex import (
    Orbit,
    SymmetricDeltaComplex,
    automorphisms,
    cover_relations,
    face_orbit_relation,
    from_simplicial_complex,
    orbit_of,
    orbits,
    pullback,
    subcomplex_generated,
    validate_complex,
)
from .errors import (
    ComplexFormatError,
    DimensionError,
    FactorialLimitError,
    InvalidDMFError,
    InvalidMatchingError,
    PreconditionError,
    SymDeltaError,
    UnknownOrbitError,
)
from .homology import betti, euler_characteristic, orbit_chain_complex, reduced_betti
from .matching import (
    Matching,
    dmf_to_matching,
    matching_to_dmf,
    search_matching,
    validate_matching,
)
from .morse import (
    DiscreteMorseFunction,
    critical_orbits,
    level_subcomplex,
    perturb_orbit_injective,
    validate_dmf,
)
from .permissibility import gluing_injections, is_permissible, permissible_pairs

__version__ = "0.1.0"
