"""Exact arithmetic kernel: rationals, sparse polynomials, rational functions,
and fraction-free linear algebra over them."""

from fractions import Fraction as Rational

from .poly import (
    ExactDivisionError,
    SparsePoly,
    canonical_primitive,
    divexact,
    divides,
    poly_gcd,
    poly_lcm,
    rational_content,
    variable_sort_key,
)
from .ratfunc import RatFn, ratfn_normalize
from .matrix import SquareMatrix, det, elementary_symmetric

__all__ = [
    "ExactDivisionError",
    "Rational",
    "RatFn",
    "SparsePoly",
    "SquareMatrix",
    "canonical_primitive",
    "det",
    "divexact",
    "divides",
    "elementary_symmetric",
    "poly_gcd",
    "poly_lcm",
    "ratfn_normalize",
    "rational_content",
    "variable_sort_key",
]
