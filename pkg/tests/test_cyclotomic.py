"""Tests for exact cyclotomic arithmetic in ``finmono.cyclotomic``.

Identities are checked in small conductors where the answer can be written
down by hand: ``1 + zeta_3 + zeta_3**2 = 0``, ``G**2 = +-p`` and so on.
"""

from __future__ import annotations

import random
from fractions import Fraction

import mpmath
import pytest
from pydantic import TypeAdapter

from finmono.arith import ParameterError, euler_phi
from finmono.cyclotomic import (
    ConductorMismatchError,
    CycNum,
    CycNumField,
    CycPoly,
    UndefinedGcdError,
    UnsupportedNormalizationError,
    check_valuation_ge,
    complex_embeddings,
    divides_unity_pow,
    gauss_square_sign,
    p_integral_everywhere,
    poly_gcd,
    quadratic_gauss_sum,
    squarefree_part,
)

TOLERANCE = mpmath.mpf("1e-15")
NUMERIC_SLACK = mpmath.mpf("1e-8")
SEED = 4104
CONDUCTORS = (1, 3, 4, 5, 7, 8, 9, 12, 15)


def _poly(conductor, coeffs):
    return CycPoly.from_coeffs(conductor, coeffs)


# ── Field arithmetic ─────────────────────────────────────────────────────────


def test_cube_roots_of_unity_sum_to_zero():
    z = CycNum.zeta(3)
    assert z * z + z + 1 == CycNum.zero(3)
    assert CycNum.zeta(3, 2) == z * z
    assert CycNum.zeta(3, -1) == CycNum.zeta(3, 2)


def test_zeta_four_squares_to_minus_one():
    i = CycNum.zeta(4)
    assert i**2 == CycNum.from_rational(4, -1)
    assert i**4 == CycNum.one(4)


def test_inverse_and_division():
    z = CycNum.zeta(3)
    # 1 + zeta = -zeta**2, so its inverse is -zeta
    assert (1 + z).inverse() == -z
    assert (z / (1 + z)) * (1 + z) == z
    assert CycNum.from_rational(5, Fraction(2, 3)).inverse() == CycNum.from_rational(
        5, Fraction(3, 2)
    )


def test_inverse_of_zero_raises():
    with pytest.raises(ZeroDivisionError, match="division by zero"):
        CycNum.zero(7).inverse()


def test_negative_powers_go_through_the_inverse():
    z = CycNum.zeta(5)
    assert z**-1 == CycNum.zeta(5, 4)


def test_operands_must_share_a_conductor():
    with pytest.raises(ConductorMismatchError, match="lift explicitly"):
        CycNum.zeta(3) + CycNum.zeta(4)


def test_wrong_coordinate_count_is_rejected():
    with pytest.raises(ParameterError, match="expected 2 coordinates"):
        CycNum(3, (Fraction(1),))


def test_exponent_counts_must_cover_every_exponent():
    with pytest.raises(ParameterError, match="need 5 exponent counts"):
        CycNum.from_exponent_counts(5, [1, 2])


# ── Structure ────────────────────────────────────────────────────────────────


def test_lift_embeds_into_a_multiple_conductor():
    assert CycNum.zeta(3).lift(6) == CycNum.zeta(6, 2)
    assert CycNum.zeta(3).lift(12) * CycNum.zeta(12, 4) == CycNum.zeta(12, 8)


def test_lift_to_a_non_multiple_is_rejected():
    with pytest.raises(ConductorMismatchError, match="cannot lift"):
        CycNum.zeta(3).lift(4)


def test_galois_action_and_conjugation():
    z = CycNum.zeta(5)
    assert z.galois(2) == CycNum.zeta(5, 2)
    assert z.conjugate() == CycNum.zeta(5, 4)
    assert (z * z.conjugate()) == CycNum.one(5)
    with pytest.raises(ParameterError, match="not a unit"):
        CycNum.zeta(6).galois(3)


def test_common_denominator():
    a = CycNum.from_dense(5, [Fraction(1, 2), Fraction(1, 3)])
    assert a.common_denominator() == 6


# ── Integrality and Gauss sums ───────────────────────────────────────────────


@pytest.mark.parametrize("p", [3, 5, 7, 11, 13])
def test_gauss_sum_squares_to_signed_prime(p):
    g = quadratic_gauss_sum(p)
    assert g * g == CycNum.from_rational(p, gauss_square_sign(p) * p)


def test_gauss_sum_rejects_two_and_composites():
    with pytest.raises(UnsupportedNormalizationError, match="p = 2"):
        quadratic_gauss_sum(2)
    with pytest.raises(ParameterError, match="odd prime"):
        quadratic_gauss_sum(9)


def test_integrality_reads_denominators():
    assert p_integral_everywhere(CycNum.from_dense(3, [Fraction(1, 2), 1]), 3)
    assert not p_integral_everywhere(CycNum.from_dense(3, [0, Fraction(1, 3)]), 3)


def test_gauss_sum_has_valuation_exactly_one_half():
    g = quadratic_gauss_sum(3)
    assert check_valuation_ge(g, 3, 1)
    assert not check_valuation_ge(g, 3, 2)
    assert check_valuation_ge(CycNum.from_rational(3, 3), 3, 2)
    assert not check_valuation_ge(CycNum.from_rational(3, 3), 3, 3)


def test_odd_threshold_needs_the_prime_in_the_conductor():
    with pytest.raises(ConductorMismatchError, match="divide the conductor"):
        check_valuation_ge(CycNum.one(4), 3, 1)


def test_complex_embeddings_of_i():
    values = complex_embeddings(CycNum.zeta(4))
    assert len(values) == 2
    assert abs(values[0] - mpmath.mpc(0, 1)) < TOLERANCE
    assert abs(values[1] - mpmath.mpc(0, -1)) < TOLERANCE


# ── Wire form ────────────────────────────────────────────────────────────────


def test_wire_form_uses_fraction_strings():
    assert CycNum.zeta(3).to_wire() == {"conductor": 3, "coords": ["0/1", "1/1"]}


def test_pydantic_field_accepts_wire_dicts():
    adapter = TypeAdapter(CycNumField)
    value = adapter.validate_python({"conductor": 4, "coords": ["1/2", "-3/1"]})
    assert value == CycNum.from_dense(4, [Fraction(1, 2), -3])
    assert adapter.dump_python(value, mode="json") == {
        "conductor": 4,
        "coords": ["1/2", "-3/1"],
    }


def test_from_wire_requires_both_keys():
    with pytest.raises(ParameterError, match="'conductor' and 'coords'"):
        CycNum.from_wire({"conductor": 3})


# ── Polynomials ──────────────────────────────────────────────────────────────


def test_from_roots_builds_monic_product():
    f = CycPoly.from_roots([CycNum.one(1), CycNum.from_rational(1, -1)], 1)
    assert f == _poly(1, [-1, 0, 1])
    assert f.degree == 2


def test_trailing_zeros_are_trimmed():
    assert _poly(1, [1, 0, 0]).degree == 0
    assert _poly(1, [0]).is_zero()


def test_euclidean_division():
    quotient, remainder = _poly(1, [-1, 0, 1]).divmod(_poly(1, [-1, 1]))
    assert quotient == _poly(1, [1, 1])
    assert remainder.is_zero()
    with pytest.raises(ZeroDivisionError):
        _poly(1, [1]).divmod(_poly(1, []))


def test_squarefree_part_drops_repeated_roots():
    # (x - 1)**2 (x + 1)
    f = _poly(1, [1, -1, -1, 1])
    assert squarefree_part(f) == _poly(1, [-1, 0, 1])


def test_gcd_of_two_zeros_is_undefined():
    with pytest.raises(UndefinedGcdError):
        poly_gcd(_poly(1, []), _poly(1, []))


def test_poly_gcd_is_monic():
    g = poly_gcd(_poly(1, [-2, 0, 2]), _poly(1, [3, 3]))
    assert g == _poly(1, [1, 1])


@pytest.mark.parametrize(
    ("coeffs", "order", "expected"),
    [
        ([1, 0, 1], 4, True),  # x**2 + 1
        ([1, 0, 1], 2, False),
        ([-1, 3, -3, 1], 1, True),  # (x - 1)**3
        ([-2, 1], 12, False),
        ([0, 1], 6, False),
    ],
)
def test_divides_unity_pow_over_the_rationals(coeffs, order, expected):
    assert divides_unity_pow(_poly(1, coeffs), order) is expected


def test_divides_unity_pow_with_cyclotomic_roots():
    f = CycPoly.from_roots([CycNum.zeta(3, 2)], 3)
    assert divides_unity_pow(f, 3)
    assert not divides_unity_pow(f, 2)
    assert divides_unity_pow(f, 6)


def test_divides_unity_pow_needs_positive_order():
    with pytest.raises(ValueError, match="positive"):
        divides_unity_pow(_poly(1, [-1, 1]), 0)


# ── Seeded properties ────────────────────────────────────────────────────────


def _random_element(rng, conductor, denominators=(1, 2, 3, 5, 7)):
    coords = tuple(
        Fraction(rng.randint(-9, 9), rng.choice(denominators))
        for _ in range(euler_phi(conductor))
    )
    return CycNum(conductor, coords)


def test_random_elements_satisfy_the_field_axioms():
    rng = random.Random(SEED)
    for _ in range(60):
        c = rng.choice(CONDUCTORS)
        a, b, d = (_random_element(rng, c) for _ in range(3))
        assert a + b == b + a
        assert a * b == b * a
        assert (a * b) * d == a * (b * d)
        assert a * (b + d) == a * b + a * d
        assert (a - b) + b == a
        if not a.is_zero():
            assert a * a.inverse() == CycNum.one(c)
            assert (b / a) * a == b


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_p_integral_elements_form_a_ring(p):
    rng = random.Random(SEED + p)
    units = tuple(d for d in (1, 2, 3, 4, 5, 7, 11) if d % p)
    for _ in range(40):
        c = rng.choice(CONDUCTORS)
        a = _random_element(rng, c, units)
        b = _random_element(rng, c, units)
        assert p_integral_everywhere(a, p)
        assert p_integral_everywhere(a * b, p)
        assert p_integral_everywhere(a - b, p)
        divisible = all(x.numerator % p == 0 for x in a.coords)
        assert p_integral_everywhere(a / Fraction(p), p) is divisible


def test_divides_unity_pow_agrees_with_numeric_powers():
    rng = random.Random(SEED)
    pool = [CycNum.zeta(12, k) for k in range(12)]
    pool += [CycNum.from_rational(12, 2), CycNum.one(12) + CycNum.zeta(12)]
    for _ in range(40):
        roots = [rng.choice(pool) for _ in range(rng.randint(1, 4))]
        order = rng.randint(1, 24)
        expected = all(
            abs(complex_embeddings(root)[0] ** order - 1) < NUMERIC_SLACK
            for root in roots
        )
        f = CycPoly.from_roots(roots, 12)
        assert divides_unity_pow(f, order) is expected


@pytest.mark.parametrize("p", [3, 5, 7, 11, 13])
def test_gauss_sum_has_absolute_value_root_p(p):
    root_p = mpmath.sqrt(p)
    for z in complex_embeddings(quadratic_gauss_sum(p)):
        assert abs(abs(z) - root_p) < NUMERIC_SLACK
