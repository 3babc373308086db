"""Packings of n-dimensional subspaces of R^m (m a power of two) from
totally singular subspaces of a binary orthogonal space, plus the
quadratic-residue equidistant family, with exact distance verification."""

from .construct import (
    GroupPlane,
    Packing,
    orbit_packing,
    pair_distance,
    principal_angle_spectrum,
    theorem1,
    theorem2,
)
from .exact import ExactMatrix
from .f2 import (
    F2Subspace,
    OrthogonalSpace,
    bilinear_form,
    canonicalize,
    count_totally_singular,
    enumerate_totally_singular,
    is_totally_singular,
    quadratic_form,
    subspace_intersection,
)
from .geometry import (
    Plane,
    chordal_distance_sq,
    orthoplex_bound,
    principal_angles,
    simplex_bound,
    verify_packing,
)
from .simplexpack import hadamard, theorem3, verify_equidistance
from .spreads import example_b, field_spread, orthogonal_spread

__all__ = [
    "ExactMatrix",
    "F2Subspace",
    "GroupPlane",
    "OrthogonalSpace",
    "Packing",
    "Plane",
    "bilinear_form",
    "canonicalize",
    "chordal_distance_sq",
    "count_totally_singular",
    "enumerate_totally_singular",
    "example_b",
    "field_spread",
    "hadamard",
    "is_totally_singular",
    "orbit_packing",
    "orthogonal_spread",
    "orthoplex_bound",
    "pair_distance",
    "principal_angle_spectrum",
    "principal_angles",
    "quadratic_form",
    "simplex_bound",
    "subspace_intersection",
    "theorem1",
    "theorem2",
    "theorem3",
    "verify_equidistance",
    "verify_packing",
]

__version__ = "0.1.0"
