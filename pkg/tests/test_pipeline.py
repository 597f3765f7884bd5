"""Tests for scans, verdicts and budgets in ``finmono.pipeline``.

Scans run on the ``p = 3, n = 2`` Artin-Schreier family, whose theorem bound
is ``N = 3`` and whose eigenvalues are cube roots of unity, and on small
trace tables with planted violations.
"""

from __future__ import annotations

import csv
import random
from fractions import Fraction

import pytest
from pydantic import ValidationError

from finmono.bounds import BoundName, Criterion
from finmono.canonicalization import canonicalize_model
from finmono.config import RuntimeLimits
from finmono.cyclotomic import CycNum, quadratic_gauss_sum
from finmono.pipeline import (
    ScanBudget,
    ScanRefusedError,
    ScanReport,
    Verdict,
    VerdictKind,
    cost_estimate,
    decide,
    family_bounds,
    largest_feasible_degree,
    point_count,
    recheck_witness,
    scan,
    write_point_csv,
)
from finmono.sheaftrace import (
    ArtinSchreierFamily,
    HypergeometricFamily,
    IncompleteTableError,
    NormalizedTrace,
    TableEntry,
    TableFamily,
    UnsupportedFamilyError,
    read_trace_table,
)

AS_3_2 = ArtinSchreierFamily(p=3, n=2)
AS_3_2_BOUND = 3
HYP_7_3 = HypergeometricFamily(p=7, m=3, a=2, b=1)

# Rank one over F_3; point "b" has trace G / -3, which is not integral.
PLANTED_TABLE = """\
conductor=3 gauss_p=3 rank=1 q=3 b1=0 e_breaks=1/1
1 a 1 -1/1 -2/1
1 b 1 1/1 0/1
"""
# Rank one over F_17 with eigenvalues +-1; the curve bound is N = 2.
FINITE_TABLE = """\
conductor=1 gauss_p=17 rank=1 q=17 b1=0 e_breaks=1/1
1 a 0 1/1
1 b 0 -1/1
2 a 0 1/1
2 b 0 1/1
"""
# No bound metadata at all.
BARE_TABLE = """\
conductor=1 gauss_p=5
1 a 0 1/1
"""


# ── Counts, costs and feasibility ────────────────────────────────────────────


def test_point_counts():
    assert point_count(AS_3_2, 2) == 9
    assert point_count(HYP_7_3, 1) == 6
    assert point_count(read_trace_table(FINITE_TABLE), 2) == 2


def test_cost_estimates():
    assert cost_estimate(AS_3_2, 1, Criterion.EIGEN) == 9
    assert cost_estimate(HYP_7_3, 1, Criterion.TRACE) == 6 * 36
    assert cost_estimate(HYP_7_3, 1, Criterion.EIGEN) == 6 * (36 + 48 * 48)
    assert cost_estimate(read_trace_table(FINITE_TABLE), 1, Criterion.EIGEN) == 2


@pytest.mark.parametrize(
    ("budget", "expected"),
    [
        (ScanBudget(max_degree=5), 5),
        (ScanBudget(max_degree=5, max_field_size=9), 2),
        (ScanBudget(max_degree=5, max_points=12), 2),
        (ScanBudget(max_degree=5, max_points=11), 1),
        (ScanBudget(max_degree=5, max_cost=9 + 81), 2),
        (ScanBudget(max_degree=0), 0),
    ],
)
def test_largest_feasible_degree(budget, expected):
    assert largest_feasible_degree(AS_3_2, Criterion.EIGEN, budget) == expected


def test_table_budget_caps_feasibility():
    limits = RuntimeLimits(max_table_size=27)
    budget = ScanBudget(max_degree=6)
    assert largest_feasible_degree(AS_3_2, Criterion.EIGEN, budget, limits=limits) == 3


def test_table_feasibility_stops_at_missing_degrees():
    table = read_trace_table(FINITE_TABLE)
    budget = ScanBudget(max_degree=4)
    assert largest_feasible_degree(table, Criterion.EIGEN, budget) == 2


# ── Bounds attached to families ──────────────────────────────────────────────


def test_family_bounds():
    assert family_bounds(AS_3_2, Criterion.EIGEN).N == AS_3_2_BOUND
    assert family_bounds(read_trace_table(FINITE_TABLE), Criterion.EIGEN).N == 2
    assert family_bounds(read_trace_table(BARE_TABLE), Criterion.EIGEN) is None
    table_report = family_bounds(read_trace_table(PLANTED_TABLE), Criterion.TRACE)
    assert table_report.theorem == "table"


# ── Verdicts ─────────────────────────────────────────────────────────────────


def test_artin_schreier_scan_is_finite():
    report = scan(AS_3_2, budget=ScanBudget(max_degree=AS_3_2_BOUND))
    assert report.verdict.kind is VerdictKind.FINITE
    assert report.verdict.checked_up_to == AS_3_2_BOUND
    assert report.bound.name is BoundName.EIGEN_CURVE
    assert report.M == 6
    assert [d.points for d in report.degrees] == [3, 9, 27]
    assert report.points_checked == 39


def test_trace_criterion_scan_is_finite():
    # rank one: a single power sum decides integrality, so N is unchanged
    report = scan(AS_3_2, Criterion.TRACE, ScanBudget(max_degree=10))
    assert report.bound.name is BoundName.TRACE_INTEGRALITY_CURVE
    assert report.bound.N == AS_3_2_BOUND
    assert report.M is None
    assert report.verdict.kind is VerdictKind.FINITE
    assert report.verdict.checked_up_to == AS_3_2_BOUND


def test_short_scan_is_inconclusive():
    report = scan(AS_3_2, budget=ScanBudget(max_degree=2))
    assert report.verdict.kind is VerdictKind.INCONCLUSIVE
    assert report.verdict.checked_up_to == 2
    assert "theorem bound N=3 not reached" in report.verdict.notes


def test_zero_budget_checks_nothing():
    report = scan(AS_3_2, budget=ScanBudget(max_degree=0))
    assert report.verdict.kind is VerdictKind.INCONCLUSIVE
    assert report.degrees == []
    assert report.verdict.checked_up_to == 0


def test_point_budget_truncates_a_degree():
    report = scan(AS_3_2, budget=ScanBudget(max_degree=3, max_points=7))
    assert [(d.points, d.checked) for d in report.degrees] == [(3, 3), (9, 4)]
    assert report.verdict.checked_up_to == 1
    assert "point budget exhausted inside degree 2" in report.verdict.notes


def test_field_size_budget_stops_the_scan():
    report = scan(AS_3_2, budget=ScanBudget(max_degree=3, max_field_size=9))
    assert report.verdict.kind is VerdictKind.INCONCLUSIVE
    assert report.verdict.notes[0] == "degree 3 needs a field of size 27 > 9"


def test_planted_violation_is_the_witness():
    table = read_trace_table(PLANTED_TABLE)
    report = scan(table)
    assert report.verdict.kind is VerdictKind.INFINITE
    witness = report.verdict.witness
    assert (witness.degree, witness.point, witness.point_index) == (1, "b", 1)
    assert witness.predicate is Criterion.EIGEN
    assert witness.data.trace_integral is False
    assert recheck_witness(report)


def test_planted_violation_under_the_trace_criterion():
    report = scan(read_trace_table(PLANTED_TABLE), Criterion.TRACE)
    assert report.verdict.witness.point == "b"
    assert recheck_witness(report)


def _planted_family(rng, points):
    g = quadratic_gauss_sum(3)
    bad = rng.randrange(points)
    entries = []
    for i in range(points):
        # +-G / G = +-1, while 1 / G is not integral at 3
        numerator = CycNum.one(3) if i == bad else g * rng.choice((1, -1))
        trace = NormalizedTrace(numerator=numerator, gauss_exponent=1, gauss_p=3)
        entries.append(TableEntry(degree=1, point_id=f"t{i}", trace=trace))
    family = TableFamily(
        conductor=3, gauss_p=3, q=3, b1=0, e_breaks=Fraction(1), entries=entries
    )
    return family, bad


@pytest.mark.parametrize("seed", [5, 17, 29])
def test_planted_violation_is_found_by_every_worker_count(seed):
    family, bad = _planted_family(random.Random(seed), 12)
    reports = [
        scan(family, budget=ScanBudget(max_degree=1, worker_count=workers))
        for workers in (1, 3)
    ]
    for report in reports:
        witness = report.verdict.witness
        assert report.verdict.kind is VerdictKind.INFINITE
        assert (witness.point, witness.point_index) == (f"t{bad}", bad)
        assert recheck_witness(report)
    assert canonicalize_model(reports[0]) == canonicalize_model(reports[1])


def test_finite_table_scan():
    report = scan(read_trace_table(FINITE_TABLE))
    assert report.verdict.kind is VerdictKind.FINITE
    assert report.verdict.checked_up_to == 2


def test_table_without_metadata_is_inconclusive():
    report = scan(read_trace_table(BARE_TABLE))
    assert report.verdict.kind is VerdictKind.INCONCLUSIVE
    assert report.bound is None
    assert "no theorem bound is available for this family" in report.verdict.notes
    assert "trace table has no points at degree 2" in report.verdict.notes


def test_eigen_scan_of_a_table_needs_higher_power_sums():
    text = PLANTED_TABLE.replace("rank=1", "rank=2").replace("1 b 1 1/1 0/1\n", "")
    with pytest.raises(IncompleteTableError):
        scan(read_trace_table(text))


def test_recheck_needs_a_witness():
    report = scan(AS_3_2, budget=ScanBudget(max_degree=1))
    with pytest.raises(ValueError, match="no witness"):
        recheck_witness(report)


def test_traces_criterion_cannot_be_scanned():
    with pytest.raises(ValueError, match="not traces"):
        scan(AS_3_2, Criterion.TRACES)


def test_unsupported_family_is_refused():
    with pytest.raises(UnsupportedFamilyError, match="odd p"):
        scan(ArtinSchreierFamily(p=2, n=3))


def test_verdict_requires_a_witness_exactly_when_infinite():
    with pytest.raises(ValidationError, match="exactly when"):
        Verdict(kind=VerdictKind.INFINITE)


# ── decide ───────────────────────────────────────────────────────────────────


def test_decide_scans_to_the_bound():
    report = decide(AS_3_2)
    assert report.verdict.kind is VerdictKind.FINITE
    assert report.budget.max_degree == AS_3_2_BOUND


def test_decide_scans_as_far_as_the_budget_allows():
    report = decide(AS_3_2, budget=ScanBudget(max_field_size=9))
    assert report.verdict.kind is VerdictKind.INCONCLUSIVE
    assert report.verdict.checked_up_to == 2
    assert report.verdict.notes[-1] == "largest feasible degree under the budget is 2"


def test_decide_never_scans_past_max_degree():
    fam = ArtinSchreierFamily(p=3, n=4)
    report = decide(fam, budget=ScanBudget(max_degree=1))
    assert [d.m for d in report.degrees] == [1]
    assert report.verdict.kind is VerdictKind.INCONCLUSIVE
    assert report.verdict.checked_up_to == 1
    assert report.budget.max_degree == 1


@pytest.mark.parametrize("max_degree", [0, 1, 2, 5])
def test_largest_feasible_degree_respects_max_degree_under_a_cap(max_degree):
    budget = ScanBudget(max_degree=max_degree)
    feasible = largest_feasible_degree(AS_3_2, Criterion.EIGEN, budget, up_to=4)
    assert feasible == min(max_degree, 4)


def test_decide_refuses_p_two_with_bounds_attached():
    with pytest.raises(ScanRefusedError) as exc_info:
        decide(ArtinSchreierFamily(p=2, n=3))
    assert exc_info.value.bounds.N == 40


# ── Reports ──────────────────────────────────────────────────────────────────


def test_report_does_not_depend_on_worker_count():
    one = scan(AS_3_2, budget=ScanBudget(max_degree=2, worker_count=1))
    two = scan(AS_3_2, budget=ScanBudget(max_degree=2, worker_count=2))
    assert canonicalize_model(one) == canonicalize_model(two)
    assert two.timing.worker_count == 2


def test_report_json_round_trips():
    report = scan(read_trace_table(PLANTED_TABLE))
    restored = ScanReport.model_validate_json(report.model_dump_json())
    assert canonicalize_model(restored) == canonicalize_model(report)
    assert "worker_count" not in report.model_dump()["budget"]


def test_point_csv(tmp_path):
    report = scan(AS_3_2, budget=ScanBudget(max_degree=1), record_points=True)
    path = tmp_path / "points.csv"
    assert write_point_csv(report, path) == 3
    with path.open(newline="", encoding="utf-8") as handle:
        rows = list(csv.reader(handle))
    assert rows[0][:3] == ["m", "point", "trace_integral"]
    assert rows[1] == ["1", "0", "True", "True", "3", "1", "-1/1 -2/1", ""]
