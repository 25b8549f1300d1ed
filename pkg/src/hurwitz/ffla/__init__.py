"""Finite-field linear algebra: GF(p^n) arithmetic and dense matrices."""

from .factor import FactorBudgetError, factor_q_power_minus_one
from .field import GF, FieldCtx, FieldError, field_for_q
from .matrix import (
    DimensionError,
    MatrixGF,
    NotUnipotentError,
    OrderComputationError,
    char_poly,
    element_order,
    fixed_space,
    fixed_space_dim,
    is_unipotent,
    jordan_partition,
    kernel_dim,
    mat_mul,
    min_poly,
    poly_eval_matrix,
)

__all__ = [
    "GF",
    "FieldCtx",
    "FieldError",
    "field_for_q",
    "MatrixGF",
    "DimensionError",
    "NotUnipotentError",
    "OrderComputationError",
    "FactorBudgetError",
    "factor_q_power_minus_one",
    "char_poly",
    "element_order",
    "fixed_space",
    "fixed_space_dim",
    "is_unipotent",
    "jordan_partition",
    "kernel_dim",
    "mat_mul",
    "min_poly",
    "poly_eval_matrix",
]
