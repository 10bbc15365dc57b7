"""Generalized particle statistics: operator validation, Fock sectors, Wick algebra."""

from .catalog import PRESET_NAMES, make_preset
from .errors import (
    DimensionMismatch,
    ExpressionSyntaxError,
    InvalidParams,
    NoBraid,
    NotHermitian,
    NotWellDefined,
    SizeLimit,
    SpeciesOutOfRange,
    WickforgeError,
)
from .fock import (
    FockSector,
    GramMatrix,
    PositivityReport,
    annihilation_matrix,
    creation_matrix,
    descended_operators,
    gram_matrix,
    ideal_subspace,
    p2_kernel,
    positivity_report,
    quotient_gram,
    quotient_sector,
    sector_basis,
    sector_report,
)
from .linalg import (
    DEFAULT_EPS,
    dagger,
    hermitian_spectrum,
    kernel_basis,
    kron,
    operator_norm,
    span_and_complement,
)
from .operators import (
    BraidOperator,
    CheckResult,
    CrossOperator,
    Pairing,
    StatisticsSystem,
    ValidationReport,
    build_ttilde,
    check_braid,
    check_consistency,
    check_star,
    check_yang_baxter,
    dump_system,
    load_system,
    system_from_dict,
    system_to_dict,
    validate_system,
)
from .wick import (
    Generator,
    NormalForm,
    OperatorExpression,
    check_cross_symmetry_axioms,
    evaluate_on_sector,
    evaluation_blocks,
    format_expression,
    normal_order,
    parse_expression,
    star,
    wick_product,
)

__version__ = "0.1.0"

__all__ = [
    "BraidOperator",
    "CheckResult",
    "CrossOperator",
    "DEFAULT_EPS",
    "DimensionMismatch",
    "ExpressionSyntaxError",
    "FockSector",
    "Generator",
    "GramMatrix",
    "InvalidParams",
    "NoBraid",
    "NormalForm",
    "NotHermitian",
    "NotWellDefined",
    "OperatorExpression",
    "PRESET_NAMES",
    "Pairing",
    "PositivityReport",
    "SizeLimit",
    "SpeciesOutOfRange",
    "StatisticsSystem",
    "ValidationReport",
    "WickforgeError",
    "annihilation_matrix",
    "build_ttilde",
    "check_braid",
    "check_consistency",
    "check_cross_symmetry_axioms",
    "check_star",
    "check_yang_baxter",
    "creation_matrix",
    "dagger",
    "descended_operators",
    "dump_system",
    "evaluate_on_sector",
    "evaluation_blocks",
    "format_expression",
    "gram_matrix",
    "hermitian_spectrum",
    "ideal_subspace",
    "kernel_basis",
    "kron",
    "load_system",
    "make_preset",
    "normal_order",
    "operator_norm",
    "p2_kernel",
    "parse_expression",
    "positivity_report",
    "quotient_gram",
    "quotient_sector",
    "sector_basis",
    "sector_report",
    "span_and_complement",
    "star",
    "system_from_dict",
    "system_to_dict",
    "validate_system",
    "wick_product",
]
