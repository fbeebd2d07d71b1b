"""Diagonal Cartier algebras and F-signatures of affine toric rings.

Quick start::

    >>> from toricd2 import from_rays, FrobeniusLevel, FracVector, d2_contains
    >>> quadric = from_rays([(1, 0), (-1, 2)])
    >>> d2_contains(quadric, FrobeniusLevel(5), FracVector((0, 0), 5)).verdict
    'Member'
"""

from .cartier import (
    D2Certificate,
    DomainError,
    GeneratorSearch,
    PiMap,
    d2_contains,
    d2_minimal_generators,
    diagonal_polytope,
    find_generators,
    is_diagonally_split,
    payne_basis,
    pi_map,
)
from .fsignature import (
    FsigRow,
    d2_splitting_count,
    d2_splitting_points,
    fsig_sequence,
    fsig_volume,
    sig_polytope,
    splitting_points,
)
from .lattice import (
    CapExceededError,
    FracVector,
    FrobeniusLevel,
    enumerate_classes,
    primitivize,
    residue_class,
)
from .oracle import (
    DiagonalMap,
    IncompatibleMapError,
    TensorMap,
    build_witness_map,
    extends_over_cone,
    is_diagonal_compatible,
    oracle_check,
    oracle_d2_contains,
    restrict_to_diagonal,
)
from .polytope import (
    HalfSpace,
    HPolytope,
    UnboundedError,
    box,
    contains,
    count_points,
    exact_volume,
    frac_points,
    interior,
    intersect,
    is_bounded,
    reflect_translate,
    vertices,
)
from .toric import (
    InvalidConeError,
    ToricDatum,
    anticanonical,
    dual_leq,
    from_rays,
    gorenstein_shift,
    is_smooth,
)

__version__ = "0.1.0"
