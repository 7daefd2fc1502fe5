"""Exact arithmetic for the sin^2-algorithm on totally-real cubic fields,
with the classical Jacobi-Perron algorithm in certified numeric mode."""

from .rationals import Q, parse_rational
from .field import (
    AlgebraicReal,
    CofactorContext,
    CofactorElement,
    CubicField,
    FieldError,
    NotTotallyReal,
    ReduciblePolynomial,
    discriminant,
    make_field,
)
from .matrices import (
    char_poly,
    format_matrix,
    mat,
    mat_det,
    mat_inverse_unimodular,
    mat_mul,
    mat_vec,
    parse_matrix,
)
from .states import (
    CubicState,
    StateError,
    change_basis,
    conjugate_triple,
    is_separating,
    orthant_membership,
    state_from_matrix,
    state_from_polynomials,
    state_is_separating,
)
from .transforms import (
    JPTransform,
    Sin2Value,
    T,
    V,
    W,
    apply_to_coords,
    enumerate_admissible,
    phi_step,
    sin2_alpha,
    sin2_via_x_intercepts,
    sin2_via_y_intercepts,
)
from .engine import (
    BudgetExceeded,
    JPResult,
    PrecisionExhausted,
    RunResult,
    StepRecord,
    cf_partial_quotients,
    parse_numeric,
    run_classical_jp,
    run_sin2,
    stage1_supporting,
    stage2_separating,
)
from .periodicity import CertificateFailed, PeriodReport, SeenMap, certify, run_checks

__version__ = "0.1.0"

__all__ = [
    "Q",
    "parse_rational",
    "AlgebraicReal",
    "CofactorContext",
    "CofactorElement",
    "CubicField",
    "FieldError",
    "NotTotallyReal",
    "ReduciblePolynomial",
    "discriminant",
    "make_field",
    "char_poly",
    "format_matrix",
    "mat",
    "mat_det",
    "mat_inverse_unimodular",
    "mat_mul",
    "mat_vec",
    "parse_matrix",
    "CubicState",
    "StateError",
    "change_basis",
    "conjugate_triple",
    "is_separating",
    "orthant_membership",
    "state_from_matrix",
    "state_from_polynomials",
    "state_is_separating",
    "JPTransform",
    "Sin2Value",
    "T",
    "V",
    "W",
    "apply_to_coords",
    "enumerate_admissible",
    "phi_step",
    "sin2_alpha",
    "sin2_via_x_intercepts",
    "sin2_via_y_intercepts",
    "BudgetExceeded",
    "JPResult",
    "PrecisionExhausted",
    "RunResult",
    "StepRecord",
    "cf_partial_quotients",
    "parse_numeric",
    "run_classical_jp",
    "run_sin2",
    "stage1_supporting",
    "stage2_separating",
    "CertificateFailed",
    "PeriodReport",
    "SeenMap",
    "certify",
    "run_checks",
]
