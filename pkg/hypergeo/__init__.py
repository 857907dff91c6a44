"""
Exact and high-precision machinery for hypergeometric quadratic
transformations and Ramanujan-type series for 1/pi^2.
"""

from .arith import (
    AlgebraicValue,
    Rational,
    binomial,
    factorial_ratio,
    pochhammer,
    squarefree_decompose,
    to_rational,
)
from .bigfloat import BigFloat, sqrt_int
from .catalog import CATALOG, FORMULA_IDS, get_formula
from .derivation import (
    DerivedFormula,
    GuilleraInput,
    derive_ramanujan,
    normalize_quadratic,
    theta_coefficients,
)
from .errors import (
    HypothesisError,
    IntegralityError,
    ParameterError,
    PrecisionError,
    VerificationError,
)
from .hyper_eval import (
    ClaimedValue,
    Kernel,
    RamanujanFormula,
    binary_split,
    check_identity_numeric,
    eval_formula,
    extract_pi,
    naive_sum,
    pi_reference,
    tail_bound,
    terms_needed,
)
from .power_series import (
    HypergeometricSpec,
    Series,
    hypergeometric_series,
    ps_compose,
    ps_mul,
    ps_pow_rational,
    ps_theta,
    quad_map,
)
from .sequences import (
    U_BIG_RECURRENCE,
    U_SMALL_RECURRENCE,
    A_seq,
    B_seq,
    RecurrenceSpec,
    U_seq,
    check_recurrence,
    u_seq,
)
from .transforms import (
    Identity,
    pfaff_saalschutz_check,
    verify_theta_weights,
    verify_transform,
)

__all__ = [
    "AlgebraicValue",
    "A_seq",
    "B_seq",
    "BigFloat",
    "CATALOG",
    "ClaimedValue",
    "DerivedFormula",
    "FORMULA_IDS",
    "GuilleraInput",
    "HypergeometricSpec",
    "HypothesisError",
    "Identity",
    "IntegralityError",
    "Kernel",
    "ParameterError",
    "PrecisionError",
    "Rational",
    "RamanujanFormula",
    "RecurrenceSpec",
    "Series",
    "U_BIG_RECURRENCE",
    "U_SMALL_RECURRENCE",
    "U_seq",
    "VerificationError",
    "binary_split",
    "binomial",
    "check_identity_numeric",
    "check_recurrence",
    "derive_ramanujan",
    "eval_formula",
    "extract_pi",
    "factorial_ratio",
    "get_formula",
    "hypergeometric_series",
    "naive_sum",
    "normalize_quadratic",
    "pfaff_saalschutz_check",
    "pi_reference",
    "pochhammer",
    "ps_compose",
    "ps_mul",
    "ps_pow_rational",
    "ps_theta",
    "quad_map",
    "sqrt_int",
    "squarefree_decompose",
    "tail_bound",
    "terms_needed",
    "theta_coefficients",
    "to_rational",
    "u_seq",
    "verify_theta_weights",
    "verify_transform",
]
