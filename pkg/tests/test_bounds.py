"""Tests for the exact effective bounds in ``finmono.bounds``.

The published Artin-Schreier values at ``p = 2`` are the anchor: every
intermediate (``M``, ``R``, the multiplier) is pinned so a drift in one
formula shows up where it happens rather than only in the final ``N``.
"""

from __future__ import annotations

from fractions import Fraction

import pytest
from pydantic import ValidationError

from finmono.arith import ParameterError
from finmono.bounds import (
    BoundEntry,
    BoundName,
    BoundReport,
    Criterion,
    CurveParams,
    GeneralParams,
    a_constant,
    adams_component_rank,
    adams_even_rank,
    curve_report,
    cyclotomic_degree,
    example_bounds_artin_schreier,
    example_bounds_hypergeometric,
    general_report,
    integrality_multiplier,
    m_closed_form_artin_schreier,
    m_closed_form_hypergeometric,
    m_closed_form_q,
    m_lcm,
    m_upper_bound,
    n_eigen_general,
    n_integral_general,
    n_power_sums,
    n_traces_curve,
)
from finmono.wire import int_for_json

# (n, M, R, N) for the Artin-Schreier family at p = 2
ARTIN_SCHREIER_P2 = [
    (3, 12, 13, 40),
    (4, 12, 146, 319),
    (5, 120, 1152162, 2304402),
]
TRACE_INTEGRALITY_P2_N3 = 160
HYP_P2_M3_READINGS = [4, 12, 36]
HYP_P2_M3_EIGEN = 44


def _curve(**overrides):
    values = {"r": 1, "q": 4, "b1": 0, "e_breaks": Fraction(1)}
    values.update(overrides)
    return CurveParams(**values)


# ── M(E, r) ──────────────────────────────────────────────────────────────────


@pytest.mark.parametrize(
    ("cond_e", "r", "expected"),
    [(1, 1, 2), (1, 2, 12), (1, 3, 12), (1, 4, 120), (3, 1, 6), (2, 2, 12)],
)
def test_m_lcm(cond_e, r, expected):
    assert m_lcm(cond_e, r) == expected


def test_m_lcm_rejects_non_positive_inputs():
    with pytest.raises(ParameterError, match="m_lcm"):
        m_lcm(0, 3)


@pytest.mark.parametrize("r", range(1, 13))
def test_closed_form_over_the_rationals_matches_the_lcm(r):
    assert m_closed_form_q(r) == m_lcm(1, r)


def test_upper_bound_is_a_multiple_of_the_lcm():
    for cond_e in (3, 4, 5, 12):
        for r in (1, 2, 3):
            assert m_upper_bound(cond_e, r) % m_lcm(cond_e, r) == 0


def test_cyclotomic_degree_over_a_cyclotomic_base():
    assert cyclotomic_degree(4, 3) == 2
    assert cyclotomic_degree(3, 3) == 1
    assert cyclotomic_degree(9, 3) == 3


def test_artin_schreier_closed_form():
    assert m_closed_form_artin_schreier(2, 3) == 12
    assert m_closed_form_artin_schreier(3, 2) == 6


def test_hypergeometric_closed_form_readings():
    readings = [
        m_closed_form_hypergeometric(2, 3, 2, name)
        for name in ("valuation_of_a", "valuation_of_m", "multiplicative_order")
    ]
    assert readings == HYP_P2_M3_READINGS
    with pytest.raises(ParameterError, match="unknown reading"):
        m_closed_form_hypergeometric(2, 3, 2, "guess")


# ── Adams ranks ──────────────────────────────────────────────────────────────


def test_even_rank_at_published_orders():
    assert adams_even_rank(2, 12) == 13
    assert adams_even_rank(3, 12) == 146
    assert adams_even_rank(4, 120) == 1152162


@pytest.mark.parametrize(("r", "m_order"), [(1, 5), (2, 12), (3, 7), (5, 4)])
def test_component_ranks_alternate_to_the_rank(r, m_order):
    ranks = [adams_component_rank(r, m_order, i) for i in range(m_order)]
    assert sum(rank if i % 2 == 0 else -rank for i, rank in enumerate(ranks)) == r


# ── Constants and trace bounds ───────────────────────────────────────────────


def test_a_constant_grows_by_thirteen_times_n_plus_three():
    assert a_constant(1) / a_constant(0) == 39
    assert a_constant(0) == Fraction(2**17, 81) * Fraction(3794, 1000) * 2
    with pytest.raises(ParameterError, match=">= 0"):
        a_constant(-1)


def test_traces_bound_on_a_curve():
    assert n_traces_curve(1, 4, 0, 1) == 3
    assert n_traces_curve(2, 3, 0, 0) == 4
    with pytest.raises(ParameterError, match="alpha_max"):
        n_traces_curve(1, 4, 0, -1)


@pytest.mark.parametrize(
    ("r", "e_ram", "p", "expected"),
    [(4, 3, 2, 12), (2, 1, 3, 2), (2, 2, 2, 4), (1, 5, 7, 1)],
)
def test_power_sum_count(r, e_ram, p, expected):
    assert n_power_sums(r, e_ram, p) == expected


def test_power_sum_count_needs_ramification():
    with pytest.raises(ParameterError, match="ramification"):
        n_power_sums(2, 0, 3)


def test_integrality_multiplier_scales_ramification_by_rank():
    assert integrality_multiplier(2, 1, 2) == 4


# ── Parameter models ─────────────────────────────────────────────────────────


def test_characteristic_defaults_to_the_prime_of_q():
    assert _curve(q=9).p == 3


def test_q_must_be_a_power_of_p():
    with pytest.raises(ValidationError, match="not a power"):
        _curve(q=6)
    with pytest.raises(ValidationError, match="not a power"):
        _curve(q=8, p=3)


def test_break_sum_must_be_positive():
    with pytest.raises(ValidationError, match="e_breaks must be positive"):
        _curve(e_breaks="0/1")


def test_general_params_default_the_field_degree():
    params = GeneralParams(r=1, q=5, ambient_n=0, complexity=1, c_x=1, cond_e=12)
    assert params.d_ext == 4


def test_report_rejects_bounds_below_twice_the_rank():
    with pytest.raises(ValidationError, match="below 2r"):
        BoundReport(
            theorem="curve",
            criterion=Criterion.EIGEN,
            inputs=_curve(),
            M=2,
            R=1,
            bounds=[BoundEntry(name=BoundName.EIGEN_CURVE, criterion="eigen", N=1)],
        )


# ── Reports ──────────────────────────────────────────────────────────────────


def test_curve_report_headline_follows_the_criterion():
    eigen = curve_report(_curve())
    traces = curve_report(_curve(), Criterion.TRACES)
    assert (eigen.M, eigen.R, eigen.N) == (2, 1, 3)
    assert traces.N == 3
    assert eigen.entry(BoundName.TRACE_IDENTITY_CURVE).N == 3
    with pytest.raises(KeyError, match="eigen_general"):
        eigen.entry(BoundName.EIGEN_GENERAL)


@pytest.mark.parametrize(("n", "m_order", "rank", "n_bound"), ARTIN_SCHREIER_P2)
def test_artin_schreier_published_values(n, m_order, rank, n_bound):
    report = example_bounds_artin_schreier(2, n)
    assert (report.M, report.R, report.N) == (m_order, rank, n_bound)
    assert report.m_closed_form == m_order
    assert report.annotations == []


def test_artin_schreier_trace_integrality_multiple():
    report = example_bounds_artin_schreier(2, 3, Criterion.TRACE)
    assert report.N == TRACE_INTEGRALITY_P2_N3
    assert report.entry(BoundName.TRACE_INTEGRALITY_CURVE).multiplier == 4


def test_artin_schreier_break_override_is_annotated():
    report = example_bounds_artin_schreier(2, 3, e_override=Fraction(1))
    assert report.N == 42
    assert report.annotations == ["break sum overridden to 1"]


def test_artin_schreier_needs_two_variables():
    with pytest.raises(ValueError, match="n >= 2"):
        example_bounds_artin_schreier(3, 1)


def test_hypergeometric_report_lists_every_reading():
    report = example_bounds_hypergeometric(2, 1, 3, 2, 1)
    assert [r.M for r in report.m_readings] == HYP_P2_M3_READINGS
    assert [r.matches_lcm for r in report.m_readings] == [False, True, False]
    assert report.M == 12
    assert report.entry(BoundName.EIGEN_CURVE).N == HYP_P2_M3_EIGEN
    assert report.entry(BoundName.EIGEN_CURVE_SIMPLIFIED).N == HYP_P2_M3_EIGEN


def test_hypergeometric_report_flags_unreproduced_printed_value():
    report = example_bounds_hypergeometric(2, 1, 3, 2, 1)
    assert report.annotations[0] == "M from the lcm definition is 12"
    assert any("54 is not reproduced" in note for note in report.annotations)


def test_hypergeometric_needs_a_above_b():
    with pytest.raises(ValueError, match="a > b"):
        example_bounds_hypergeometric(2, 1, 3, 1, 1)


def test_general_report_materializes_small_bounds():
    params = GeneralParams(r=1, q=5, ambient_n=0, complexity=1, c_x=1)
    report = general_report(params)
    assert report.M == 2
    assert report.A_n == a_constant(0)
    assert report.N is not None
    assert report.N >= 2 * report.R


def test_general_eigen_bound_reports_magnitude_past_the_digit_budget():
    params = GeneralParams(r=4, q=5, ambient_n=2, complexity=2, c_x=1)
    bound = n_eigen_general(params)
    assert bound.M == 120
    assert bound.N is None
    assert bound.N_magnitude is not None and bound.N_magnitude >= 3
    report = general_report(params, Criterion.TRACE)
    assert report.N is None
    assert report.entry(BoundName.TRACE_INTEGRALITY_GENERAL).N_magnitude >= (
        bound.N_magnitude
    )


@pytest.mark.parametrize("bound_fn", [n_eigen_general, n_integral_general])
def test_digit_count_matches_the_materialized_bound(bound_fn):
    params = GeneralParams(r=1, q=5, ambient_n=0, complexity=1, c_x=1)
    exact = bound_fn(params)
    counted = bound_fn(params, max_digits=0)
    assert counted.N is None
    assert counted.N_magnitude == len(str(exact.N))
    assert counted.multiplier == exact.multiplier


# ── JSON form ────────────────────────────────────────────────────────────────


def test_report_json_uses_fraction_strings_and_plain_small_integers():
    data = example_bounds_artin_schreier(2, 5).model_dump(mode="json")
    assert data["N"] == 2304402
    assert data["inputs"]["e_breaks"] == "1/4"


def test_integers_beyond_double_precision_become_strings():
    assert int_for_json(2**53) == 2**53
    assert int_for_json(2**53 + 1) == str(2**53 + 1)
