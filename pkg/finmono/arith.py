"""Exact integer and rational kernels shared by every other module.

Every bound in this package sits close to a flooring boundary (``319`` versus
``320`` is a one-unit difference in a ``floor(2 log_q ...)`` term), so nothing
here touches floating point. Rationals are :class:`fractions.Fraction`, which
is always reduced and keeps a positive denominator; number-theoretic helpers
come from :mod:`sympy`.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

import sympy

BigRat = Fraction

__all__ = [
    "BigRat",
    "ParameterError",
    "binomial",
    "cyclotomic_poly",
    "euler_phi",
    "floor_log",
    "floor_two_log_plus",
    "format_fraction",
    "p_adic_valuation",
    "parse_fraction",
    "primes_up_to",
]


class ParameterError(ValueError):
    """Raised when a kernel receives arguments outside its domain."""


def floor_log(base: int, value: int | Fraction) -> int:
    """Return the largest ``k >= 0`` with ``base**k <= value``.

    Exponential search followed by bisection, all on exact integers, so the
    result is correct even for values with thousands of digits.

    Raises:
        ParameterError: If ``base < 2`` or ``value < 1``.
    """
    if base < 2:
        msg = f"floor_log base must be >= 2, got {base}"
        raise ParameterError(msg)
    value = Fraction(value)
    if value < 1:
        msg = f"floor_log value must be >= 1, got {value}"
        raise ParameterError(msg)

    num, den = value.numerator, value.denominator
    high = 1
    while base**high * den <= num:
        high *= 2
    low = 0
    # invariant: base**low <= value < base**high
    while high - low > 1:
        mid = (low + high) // 2
        if base**mid * den <= num:
            low = mid
        else:
            high = mid
    return low


def floor_two_log_plus(q: int, y: int | Fraction) -> int:
    """Compute ``floor(2 * max(0, log_q(y)))`` exactly.

    This is ``max{k >= 0 : q**k <= y**2}``; for ``y <= 1`` the clamp makes it 0.

    Args:
        q: Base of the logarithm, at least 2.
        y: Positive rational argument.

    Raises:
        ParameterError: If ``q < 2`` or ``y <= 0``.
    """
    if q < 2:
        msg = f"q must be >= 2, got {q}"
        raise ParameterError(msg)
    y = Fraction(y)
    if y <= 0:
        msg = f"log argument must be positive, got {y}"
        raise ParameterError(msg)
    square = y * y
    if square < 1:
        return 0
    return floor_log(q, square)


def binomial(n: int, k: int) -> int:
    """Binomial coefficient, 0 outside ``0 <= k <= n``."""
    if k < 0 or k > n or n < 0:
        return 0
    return math.comb(n, k)


@lru_cache(maxsize=4096)
def euler_phi(n: int) -> int:
    """Euler's totient, the degree of the ``n``-th cyclotomic field."""
    if n < 1:
        msg = f"euler_phi needs n >= 1, got {n}"
        raise ParameterError(msg)
    return int(sympy.totient(n))


@lru_cache(maxsize=1024)
def cyclotomic_poly(n: int) -> tuple[int, ...]:
    """Coefficients of the ``n``-th cyclotomic polynomial, low degree first."""
    if n < 1:
        msg = f"cyclotomic_poly needs n >= 1, got {n}"
        raise ParameterError(msg)
    x = sympy.Symbol("x")
    coeffs = sympy.Poly(sympy.cyclotomic_poly(n, x), x).all_coeffs()
    return tuple(int(c) for c in reversed(coeffs))


def primes_up_to(bound: int) -> list[int]:
    """Ascending primes ``<= bound``."""
    if bound < 2:
        return []
    return [int(p) for p in sympy.primerange(2, bound + 1)]


def p_adic_valuation(n: int, p: int) -> int:
    """Exponent of the prime ``p`` in the non-zero integer ``n``."""
    if n == 0:
        msg = "valuation of 0 is infinite"
        raise ParameterError(msg)
    return int(sympy.multiplicity(p, abs(n)))


def format_fraction(value: Fraction) -> str:
    """Render a rational as ``"num/den"``, denominator always present."""
    return f"{value.numerator}/{value.denominator}"


def parse_fraction(text: str | int | Fraction) -> Fraction:
    """Parse ``"num/den"`` (or a bare integer) into a reduced rational."""
    if isinstance(text, Fraction):
        return text
    if isinstance(text, int) and not isinstance(text, bool):
        return Fraction(text)
    if not isinstance(text, str):
        msg = f"expected a 'num/den' string, got {type(text).__name__}"
        raise ParameterError(msg)
    raw = text.strip()
    num, sep, den = raw.partition("/")
    try:
        if not sep:
            return Fraction(int(num))
        return Fraction(int(num), int(den))
    except (ValueError, ZeroDivisionError) as exc:
        msg = f"not a rational in num/den form: {text!r}"
        raise ParameterError(msg) from exc
