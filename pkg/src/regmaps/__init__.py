"""regmaps: exact rational maps between spheres and matrix groups.

Everything is computed over the rationals (or Gaussian rationals for the
circle and unitary groups): points on varieties are tuples of fractions,
maps are tuples of polynomials over a shared denominator, and the
structural claims -- a composite lands on the sphere, a section really
splits a projection, a retraction fixes its subgroup -- are either proved
by exact normal-form computation or checked at exact sample points.
Floating point only enters for the two numerical invariants (circle
winding numbers and Monte Carlo mapping degrees).
"""

from __future__ import annotations

from .polynomial import (
    GAUSSIAN_I,
    GaussianRational,
    MissingAssignmentError,
    OverlappingBlocksError,
    Polynomial,
    RegistryMismatchError,
    SphereBlock,
    UnknownVariableError,
    VarRegistry,
    normal_form,
    polynomial_from_json,
    polynomial_to_json,
)
from .varieties import (
    NoSamplerError,
    PointOnVariety,
    PointValidationError,
    Variety,
    euclidean,
    sample_point,
    sample_points,
    special_orthogonal,
    special_unitary,
    sphere,
    sphere_product,
    unitary,
)
from .ratmap import (
    CodomainViolationError,
    DenominatorReport,
    EqualityReport,
    ExcludedLocusError,
    MapsIntoReport,
    MatrixMap,
    RationalMap,
    VarietyMismatchError,
    ZeroDenominatorError,
    compose,
    constant_map,
    denominator_check,
    equal_mod,
    equal_symbolic,
    identity_map,
    identity_matrix_map,
    map_from_json,
    map_to_json,
    maps_into,
    matrix_multiply,
    matrix_transpose,
    pair_map,
)
from .spheres import (
    antipodal,
    basepoint,
    circle_power,
    circle_rotation,
    oplus,
    oplus_via_charts,
    phi_double,
    pointwise_oplus,
    reflect,
    sphere_identity,
    stereo,
    stereo_inv,
)
from .groups import (
    JMapInput,
    chain_retract,
    embed_orthogonal,
    embed_u_in_so,
    embed_unitary,
    fiber_points,
    first_column,
    first_column_u,
    j_map,
    jmap_constant_identity,
    jmap_double_rotation,
    jmap_rotation,
    retract_so,
    retract_u,
    section_so,
    section_u,
    su_retract,
)
from .topology import (
    CodimPairReport,
    DegreeEstimate,
    NonConvergenceError,
    ProbeReport,
    RadonHurwitzValue,
    check_codim_pair,
    degree_mc,
    radon_hurwitz,
    regular_value_probe,
    winding,
)

__version__ = "0.1.0"

__all__ = [
    "GAUSSIAN_I",
    "GaussianRational",
    "MissingAssignmentError",
    "OverlappingBlocksError",
    "Polynomial",
    "RegistryMismatchError",
    "SphereBlock",
    "UnknownVariableError",
    "VarRegistry",
    "normal_form",
    "polynomial_from_json",
    "polynomial_to_json",
    "NoSamplerError",
    "PointOnVariety",
    "PointValidationError",
    "Variety",
    "euclidean",
    "sample_point",
    "sample_points",
    "special_orthogonal",
    "special_unitary",
    "sphere",
    "sphere_product",
    "unitary",
    "CodomainViolationError",
    "DenominatorReport",
    "EqualityReport",
    "ExcludedLocusError",
    "MapsIntoReport",
    "MatrixMap",
    "RationalMap",
    "VarietyMismatchError",
    "ZeroDenominatorError",
    "compose",
    "constant_map",
    "denominator_check",
    "equal_mod",
    "equal_symbolic",
    "identity_map",
    "identity_matrix_map",
    "map_from_json",
    "map_to_json",
    "maps_into",
    "matrix_multiply",
    "matrix_transpose",
    "pair_map",
    "antipodal",
    "basepoint",
    "circle_power",
    "circle_rotation",
    "oplus",
    "oplus_via_charts",
    "phi_double",
    "pointwise_oplus",
    "reflect",
    "sphere_identity",
    "stereo",
    "stereo_inv",
    "JMapInput",
    "chain_retract",
    "embed_orthogonal",
    "embed_u_in_so",
    "embed_unitary",
    "fiber_points",
    "first_column",
    "first_column_u",
    "j_map",
    "jmap_constant_identity",
    "jmap_double_rotation",
    "jmap_rotation",
    "retract_so",
    "retract_u",
    "section_so",
    "section_u",
    "su_retract",
    "CodimPairReport",
    "DegreeEstimate",
    "NonConvergenceError",
    "ProbeReport",
    "RadonHurwitzValue",
    "check_codim_pair",
    "degree_mc",
    "radon_hurwitz",
    "regular_value_probe",
    "winding",
    "__version__",
]
