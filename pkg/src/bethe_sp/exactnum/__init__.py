"""Exact arithmetic substrate: Q(i), rational functions in eps, determinants."""

from .gaussian import ONE, ZERO, GaussianRational, as_field
from .hermite import hermite_interpolant
from .linalg import ScalarMatrix, det_exact
from .polynomial import (
    EPS,
    PolyEps,
    RationalFunctionEps,
    eval_at_eps_zero,
    first_derivative_at_zero,
    poly_gcd,
)

__all__ = [
    "EPS",
    "ONE",
    "ZERO",
    "GaussianRational",
    "PolyEps",
    "RationalFunctionEps",
    "ScalarMatrix",
    "as_field",
    "det_exact",
    "eval_at_eps_zero",
    "first_derivative_at_zero",
    "hermite_interpolant",
    "poly_gcd",
]
