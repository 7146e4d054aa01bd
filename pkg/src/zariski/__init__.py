"""Exact divisorial Zariski decompositions on Lorentzian lattices.

The package computes, certifies, and serializes decompositions
``alpha = Z(alpha) + N(alpha)`` of divisor classes against a finite list
of prime classes, entirely in exact arithmetic, together with the
exceptional-family combinatorics, volumes, and a projective-bundle
construction whose tautological class has irrational volume.
"""
from fractions import Fraction as Rational

from .bundle import (
    BaseSurface,
    BundleClass,
    IrrationalClassError,
    decompose_bundle,
    intersect3,
    is_rational,
    mu_candidates,
    mu_L,
    volume_L,
)
from .cone import (
    ConeModel,
    InvalidModelError,
    PrimeClass,
    ValidationReport,
    cone_model,
)
from .engine import (
    Certificate,
    Decomposition,
    InternalInconsistencyError,
    NotPseudoEffectiveError,
    OracleUniquenessError,
    UnknownPrimeError,
    brute_force_decompose,
    chamber_of,
    decompose,
    enumerate_exceptional_families,
    is_big,
    is_exceptional_family,
    negative_part,
    verify_certificate,
    volume,
    zariski_projection,
)
from .exact import (
    CanonicalizationWarning,
    DegeneratePolynomialError,
    DimensionMismatchError,
    MixedRadicandError,
    QuadExt,
    SingularMatrixError,
    SymmetricForm,
    Vector,
    as_vector,
    gram_matrix,
    inner,
    is_negative_definite,
    quadratic_roots,
    signature,
    solve_symmetric,
    split_square,
    symmetric_form,
)
from .fixtures import (
    FixtureSpec,
    GenerationExhaustedError,
    gen_model,
    gen_pseudoeffective_class,
)
from .serialize import (
    DecompositionDocument,
    FormatError,
    decimal_approx,
    decomposition_from_json,
    decomposition_to_json,
    dump_model,
    load_model,
    model_from_json,
    model_to_json,
    rebuild_decomposition,
)

__version__ = "0.1.0"

__all__ = [
    "BaseSurface",
    "BundleClass",
    "CanonicalizationWarning",
    "Certificate",
    "ConeModel",
    "Decomposition",
    "DecompositionDocument",
    "DegeneratePolynomialError",
    "DimensionMismatchError",
    "FixtureSpec",
    "FormatError",
    "GenerationExhaustedError",
    "InternalInconsistencyError",
    "InvalidModelError",
    "IrrationalClassError",
    "MixedRadicandError",
    "NotPseudoEffectiveError",
    "OracleUniquenessError",
    "PrimeClass",
    "QuadExt",
    "Rational",
    "SingularMatrixError",
    "SymmetricForm",
    "UnknownPrimeError",
    "ValidationReport",
    "Vector",
    "as_vector",
    "brute_force_decompose",
    "chamber_of",
    "cone_model",
    "decimal_approx",
    "decompose",
    "decompose_bundle",
    "decomposition_from_json",
    "decomposition_to_json",
    "dump_model",
    "enumerate_exceptional_families",
    "gen_model",
    "gen_pseudoeffective_class",
    "gram_matrix",
    "inner",
    "intersect3",
    "is_big",
    "is_exceptional_family",
    "is_negative_definite",
    "is_rational",
    "load_model",
    "model_from_json",
    "model_to_json",
    "mu_L",
    "mu_candidates",
    "negative_part",
    "quadratic_roots",
    "rebuild_decomposition",
    "signature",
    "solve_symmetric",
    "split_square",
    "symmetric_form",
    "verify_certificate",
    "volume",
    "volume_L",
    "zariski_projection",
]
