"""Tests for the exact integer kernels in ``finmono.arith``.

Every bound is a ``floor`` of a logarithm sitting close to an integer, so the
kernels are pinned at exact powers and one below them.
"""

from __future__ import annotations

import random
from fractions import Fraction

import pytest
from sympy import divisors

from finmono.arith import (
    ParameterError,
    binomial,
    cyclotomic_poly,
    euler_phi,
    floor_log,
    floor_two_log_plus,
    format_fraction,
    p_adic_valuation,
    parse_fraction,
    primes_up_to,
)

# 2 log_2(169) = log_2(28561) and 2**14 = 16384 <= 28561 < 32768.
TWO_LOG_169 = 14
HUGE_EXPONENT = 1000
SEED = 1729

# ── floor_log ────────────────────────────────────────────────────────────────


def test_floor_log_at_exact_powers_and_just_below():
    assert floor_log(2, 8) == 3
    assert floor_log(2, 7) == 2
    assert floor_log(3, 1) == 0
    assert floor_log(10, 999) == 2


def test_floor_log_of_a_rational_argument():
    assert floor_log(2, Fraction(9, 2)) == 2
    assert floor_log(2, Fraction(7, 2)) == 1


def test_floor_log_handles_thousand_digit_values():
    assert floor_log(7, 7**HUGE_EXPONENT) == HUGE_EXPONENT
    assert floor_log(7, 7**HUGE_EXPONENT - 1) == HUGE_EXPONENT - 1


@pytest.mark.parametrize(("base", "value"), [(1, 10), (2, 0), (2, Fraction(1, 2))])
def test_floor_log_rejects_bad_domain(base, value):
    with pytest.raises(ParameterError, match="floor_log"):
        floor_log(base, value)


# ── floor_two_log_plus ───────────────────────────────────────────────────────


def test_floor_two_log_plus_matches_squared_argument():
    assert floor_two_log_plus(2, 169) == TWO_LOG_169
    # 2 log_4(2) = 1 exactly
    assert floor_two_log_plus(4, 2) == 1


def test_floor_two_log_plus_clamps_small_arguments_to_zero():
    assert floor_two_log_plus(5, 1) == 0
    assert floor_two_log_plus(5, Fraction(1, 3)) == 0


def test_floor_two_log_plus_rejects_non_positive_argument():
    with pytest.raises(ParameterError, match="positive"):
        floor_two_log_plus(3, 0)
    with pytest.raises(ParameterError, match="q must be"):
        floor_two_log_plus(1, 5)


# ── Number theory helpers ────────────────────────────────────────────────────


def test_binomial_is_zero_out_of_range():
    assert binomial(5, 2) == 10
    assert binomial(3, 5) == 0
    assert binomial(3, -1) == 0


def test_euler_phi_and_cyclotomic_polynomials():
    assert [euler_phi(n) for n in (1, 3, 4, 12, 15)] == [1, 2, 2, 4, 8]
    assert cyclotomic_poly(3) == (1, 1, 1)
    assert cyclotomic_poly(12) == (1, 0, -1, 0, 1)


def test_primes_and_valuations():
    assert primes_up_to(13) == [2, 3, 5, 7, 11, 13]
    assert primes_up_to(1) == []
    assert p_adic_valuation(48, 2) == 4
    assert p_adic_valuation(-27, 3) == 3
    with pytest.raises(ParameterError, match="infinite"):
        p_adic_valuation(0, 5)


# ── Rational wire form ───────────────────────────────────────────────────────


def test_fractions_always_carry_a_denominator():
    assert format_fraction(Fraction(3)) == "3/1"
    assert format_fraction(Fraction(-2, 4)) == "-1/2"


def test_parse_fraction_accepts_bare_integers_and_reduces():
    assert parse_fraction("6/4") == Fraction(3, 2)
    assert parse_fraction(" 5 ") == Fraction(5)
    assert parse_fraction(7) == Fraction(7)


@pytest.mark.parametrize("text", ["1/0", "a/b", "1.5"])
def test_parse_fraction_rejects_malformed_text(text):
    with pytest.raises(ParameterError, match="num/den"):
        parse_fraction(text)


# ── Seeded properties ────────────────────────────────────────────────────────


def _poly_mul(f, g):
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        for j, b in enumerate(g):
            out[i + j] += a * b
    return out


def test_floor_two_log_plus_is_exact_and_monotone():
    rng = random.Random(SEED)
    for _ in range(1000):
        q = rng.randint(2, 50)
        y = Fraction(rng.randint(1, 10**6), rng.randint(1, 10**3))
        larger = y + Fraction(rng.randint(0, 10**4), rng.randint(1, 10**3))
        k = floor_two_log_plus(q, y)
        assert k <= floor_two_log_plus(q, larger)
        if y * y < 1:
            assert k == 0
        else:
            assert q**k <= y * y < q ** (k + 1)


def test_totients_of_the_divisors_sum_to_n():
    rng = random.Random(SEED)
    for n in rng.sample(range(1, 2000), 100):
        assert sum(euler_phi(d) for d in divisors(n)) == n


def test_cyclotomic_polynomials_multiply_to_x_n_minus_one():
    rng = random.Random(SEED)
    for n in rng.sample(range(1, 80), 25):
        product = [1]
        for d in divisors(n):
            product = _poly_mul(product, list(cyclotomic_poly(d)))
        assert product == [-1, *[0] * (n - 1), 1]
