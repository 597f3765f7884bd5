"""Tests for the cross-check suites and the self-test.

Each suite is run at a reduced size, and a deliberately broken formula is
injected to show that a disagreement is caught and named.
"""

from __future__ import annotations

import pytest

from finmono import suites
from finmono.suites import (
    SUITES,
    adams_suite,
    gauss_suite,
    hasse_davenport_suite,
    lemma_suite,
    mlcm_suite,
    run_suites,
    selftest,
)


# ── Passing suites ───────────────────────────────────────────────────────────


def test_mlcm_suite():
    result = mlcm_suite(rmax=6)
    assert result.passed
    assert result.checks == 6 + len(suites.UPPER_BOUND_CONDUCTORS) * 6
    assert result.failure is None


def test_adams_suite():
    result = adams_suite(rmax=4, mmax=12)
    assert result.passed
    assert result.checks == 48


def test_lemma_suite():
    result = lemma_suite(trials=100, seed=3)
    assert result.passed
    assert result.checks == len(suites.LEMMA_CASES)


def test_gauss_suite():
    result = gauss_suite(pmax=13)
    assert result.passed
    # five odd primes, then 7 + 3 + 23 + 5 non-trivial characters
    assert result.checks == 5 + 38


def test_hasse_davenport_suite():
    result = hasse_davenport_suite(mmax=3)
    assert result.passed
    assert result.checks == 6


def test_selftest_reproduces_published_values():
    result = selftest()
    assert result.passed, result.failure
    assert result.checks == 5


# ── Dispatch ─────────────────────────────────────────────────────────────────


def test_run_suites_passes_sizes_through():
    results = run_suites(["mlcm", "adams"], rmax=2, mmax=3)
    assert [r.name for r in results] == ["mlcm", "adams"]
    assert results[1].checks == 6


def test_run_suites_runs_everything_by_default(monkeypatch):
    calls = []
    for name in SUITES:
        monkeypatch.setitem(
            SUITES,
            name,
            lambda _n=name, **_: calls.append(_n)
            or suites.SuiteResult(name=_n, passed=True, checks=0),
        )
    results = run_suites()
    assert calls == list(SUITES)
    assert all(r.passed for r in results)


def test_unknown_suite_is_rejected():
    with pytest.raises(KeyError, match="unknown suite 'nope'"):
        run_suites(["nope"])


# ── Fault injection ──────────────────────────────────────────────────────────


def test_broken_closed_form_is_caught(monkeypatch):
    monkeypatch.setattr(suites, "m_closed_form_q", lambda r: 0)
    result = mlcm_suite(rmax=3)
    assert not result.passed
    assert result.checks == 0
    assert result.failure == "m_closed_form_q(1) = 0 != m_lcm(1, 1) = 2"


def test_broken_even_rank_is_caught(monkeypatch):
    monkeypatch.setattr(suites, "adams_even_rank", lambda r, m: -1)
    result = adams_suite(rmax=2, mmax=2)
    assert not result.passed
    assert "even rank for r=1, M=1" in result.failure


def test_broken_gauss_sum_is_caught(monkeypatch):
    monkeypatch.setattr(suites, "gauss_square_sign", lambda p: 0)
    result = gauss_suite(pmax=5)
    assert not result.passed
    assert result.failure == "G**2 != 0 for p=3"


def test_selftest_flags_a_wrong_published_value(monkeypatch):
    monkeypatch.setattr(suites, "PUBLISHED_ARTIN_SCHREIER", ((3, 12, 13, 41),))
    result = selftest()
    assert not result.passed
    assert "expected (12, 13, 41)" in result.failure
