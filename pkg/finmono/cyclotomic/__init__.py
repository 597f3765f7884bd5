"""Exact arithmetic in cyclotomic fields and polynomials over them."""

from finmono.cyclotomic.numbers import (
    ConductorMismatchError,
    CycNum,
    CycNumField,
    UnsupportedNormalizationError,
    check_valuation_ge,
    complex_embeddings,
    gauss_square_sign,
    p_integral_everywhere,
    quadratic_gauss_sum,
)
from finmono.cyclotomic.polys import (
    CycPoly,
    UndefinedGcdError,
    divides_unity_pow,
    poly_gcd,
    squarefree_part,
)

__all__ = [
    "ConductorMismatchError",
    "CycNum",
    "CycNumField",
    "CycPoly",
    "UndefinedGcdError",
    "UnsupportedNormalizationError",
    "check_valuation_ge",
    "complex_embeddings",
    "divides_unity_pow",
    "gauss_square_sign",
    "p_integral_everywhere",
    "poly_gcd",
    "quadratic_gauss_sum",
    "squarefree_part",
]
