"""Exact computations with finite-dimensional algebras under generalized
Hopf-algebra actions: action verification, radicals, H-simple block
decompositions, the structural PI-exponent, and codimension sequences of
multilinear polynomial identities."""

from .algebra import (
    Grading,
    StructAlgebra,
    adjoin_unit,
    center,
    check_associativity,
    is_nilpotent,
    jacobson_radical,
    primitive_central_idempotents,
    validate_grading,
    wedderburn_malcev,
)
from .errors import (
    CannotCertifyError,
    DecompositionFailureError,
    DimensionMismatchError,
    FieldTooSmallError,
    GradingError,
    HpiError,
    NotCompletelyReducibleError,
    NotUnitalError,
    OrderMismatchError,
    RelationError,
    ResourceCapError,
    SchemaError,
    ValidationError,
)
from .field import (
    Cyclotomic,
    GroundField,
    QQ,
    Rational,
    cyclotomic_polynomial,
    is_primitive_root,
)
from .haction import (
    DecompReport,
    ExpansionTerm,
    Generator,
    HAction,
    decompose,
    exponent_candidate,
    h_radical,
    h_simple_decompose,
    is_h_simple,
    kappa_embedding,
    verify_action,
    verify_hopf_module_axioms,
)
from .hopfzoo import (
    HopfPresentation,
    catalog_names,
    grading_dual_action,
    group_action,
    load_catalog,
    taft,
    taft_action,
    trivial_action,
)
from .linalg import Matrix, RankAccumulator, Subspace
from .pi import (
    HMonomial,
    HPolynomial,
    alternate,
    codimension,
    eval_tensor,
    evaluate,
    exponent_report,
    graded_codimension,
    is_h_identity,
    property_star_witness,
)

__version__ = "0.1.0"
