"""Exact scalar products, norms and form factors of gl(2|1) Bethe vectors.

Everything is computed over the Gaussian rationals Q(i), or over rational
functions of one formal parameter eps when a limit or derivative is taken,
so every identity is checked with exact equality.
"""

from .errors import (
    BadCardinality,
    BetheError,
    BudgetExceeded,
    CardinalityMismatch,
    ConstraintViolation,
    DivisionByZero,
    DuplicatePoints,
    MissingRValue,
    NonSquare,
    ParseError,
    PoleAtZero,
    PoleError,
    ZeroPivot,
)
from .exactnum import (
    EPS,
    GaussianRational,
    PolyEps,
    RationalFunctionEps,
    ScalarMatrix,
    det_exact,
    eval_at_eps_zero,
    first_derivative_at_zero,
    hermite_interpolant,
)
from .dwpf import K
from .highest import Z_eta, Z_omega, ZArgs
from .kernels import BetheConfig, ParamSet, RValue, delta_minus, delta_plus, prod_kernel
from .partitions import PartitionSplit, multi_splits, splits
from .scalar import SEMI, TWISTED, RAssignment, apply_constraints, build_N, det_rep, sum_formula
from .spectral import (
    formfactor_matrix,
    formfactor_value,
    gaudin_matrix,
    norm_via_gaudin,
    omega,
)
from .verdict import Verdict

__all__ = [
    "BadCardinality",
    "BetheError",
    "BudgetExceeded",
    "CardinalityMismatch",
    "ConstraintViolation",
    "DivisionByZero",
    "DuplicatePoints",
    "MissingRValue",
    "NonSquare",
    "ParseError",
    "PoleAtZero",
    "PoleError",
    "ZeroPivot",
    "EPS",
    "GaussianRational",
    "PolyEps",
    "RationalFunctionEps",
    "ScalarMatrix",
    "det_exact",
    "eval_at_eps_zero",
    "first_derivative_at_zero",
    "hermite_interpolant",
    "K",
    "Z_eta",
    "Z_omega",
    "ZArgs",
    "BetheConfig",
    "ParamSet",
    "RValue",
    "delta_minus",
    "delta_plus",
    "prod_kernel",
    "PartitionSplit",
    "multi_splits",
    "splits",
    "SEMI",
    "TWISTED",
    "RAssignment",
    "apply_constraints",
    "build_N",
    "det_rep",
    "sum_formula",
    "formfactor_matrix",
    "formfactor_value",
    "gaudin_matrix",
    "norm_via_gaudin",
    "omega",
    "Verdict",
]

__version__ = "0.1.0"
