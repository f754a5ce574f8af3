"""Exact rational analysis of holonomy representations of flat projective
and affine manifolds: suspension, centralizer algebras, radical
decompositions, invariant flags, and classification certificates for
dimensions 2 and 3."""

from .linalg import (
    RatMatrix,
    Rational,
    Subspace,
    image_of,
    kernel_of,
    rref_kernel_image,
    solve_linear,
)
from .polys import (
    Polynomial,
    char_min_poly,
    factor_polynomial,
    minimal_polynomial,
    primary_decomposition,
)
from .representation import (
    AffineField,
    AssumptionSet,
    Generator,
    Representation,
    ValidationError,
    benzecri_suspend,
    canonicalize_projective_class,
    develop_eval,
    embed_affine_as_projective,
    embed_linear_as_affine,
    lift_to_sphere,
    radiant_fixed_point,
    validate_rep,
)
from .commutant import (
    AlgebraBasis,
    Certificate,
    Decomposition,
    FixedProjectivePointCertificate,
    Flag,
    InvariantFlagCertificate,
    InvariantSubspaceCertificate,
    NoCertificate,
    RotationalElementCertificate,
    algebra_closure_check,
    centralizer_algebra,
    dickson_radical,
    find_rotational_element,
    invariant_affine_fields,
    invariant_flag_search,
    matrix_centralizer,
    orbit_dimension_at,
    project_automorphism_algebra,
    truncated_derived_series,
    verify_certificate,
    verify_flag_invariant,
)
from .classify import (
    CaseAnalysisError,
    DIM3_DISJUNCTION,
    Outcome,
    ZeroSet,
    ZeroSetAnalysis,
    classify_dim2,
    classify_dim3,
    flag_from_nilpotent_element,
    flag_from_nilpotent_pair,
    zero_set_of_affine_field,
)
from .fileio import load_rep_file, save_rep_file, write_report

__version__ = "0.1.0"

__all__ = [
    "AffineField",
    "AlgebraBasis",
    "AssumptionSet",
    "CaseAnalysisError",
    "Certificate",
    "DIM3_DISJUNCTION",
    "Decomposition",
    "FixedProjectivePointCertificate",
    "Flag",
    "Generator",
    "InvariantFlagCertificate",
    "InvariantSubspaceCertificate",
    "NoCertificate",
    "Outcome",
    "Polynomial",
    "RatMatrix",
    "Rational",
    "Representation",
    "RotationalElementCertificate",
    "Subspace",
    "ValidationError",
    "ZeroSet",
    "ZeroSetAnalysis",
    "algebra_closure_check",
    "benzecri_suspend",
    "canonicalize_projective_class",
    "centralizer_algebra",
    "char_min_poly",
    "classify_dim2",
    "classify_dim3",
    "develop_eval",
    "dickson_radical",
    "embed_affine_as_projective",
    "embed_linear_as_affine",
    "factor_polynomial",
    "find_rotational_element",
    "flag_from_nilpotent_element",
    "flag_from_nilpotent_pair",
    "image_of",
    "invariant_affine_fields",
    "invariant_flag_search",
    "kernel_of",
    "lift_to_sphere",
    "load_rep_file",
    "matrix_centralizer",
    "minimal_polynomial",
    "orbit_dimension_at",
    "primary_decomposition",
    "project_automorphism_algebra",
    "radiant_fixed_point",
    "rref_kernel_image",
    "save_rep_file",
    "solve_linear",
    "truncated_derived_series",
    "validate_rep",
    "verify_certificate",
    "verify_flag_invariant",
    "write_report",
    "zero_set_of_affine_field",
]
