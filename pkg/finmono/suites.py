"""Cross-check suites behind ``finmono oracle`` and ``finmono selftest``.

Each suite compares two independent computations of the same quantity and
stops at the first disagreement, which it names in ``failure``.
"""

from __future__ import annotations

import logging
from collections.abc import Callable
from typing import Any

from pydantic import BaseModel, ConfigDict, Field

from finmono.arith import primes_up_to
from finmono.bounds import (
    BoundName,
    Criterion,
    adams_component_rank,
    adams_even_rank,
    example_bounds_artin_schreier,
    example_bounds_hypergeometric,
    m_closed_form_q,
    m_lcm,
    m_upper_bound,
)
from finmono.cyclotomic import CycNum, gauss_square_sign, quadratic_gauss_sum
from finmono.finitefield import character_gauss_sum, field_of_degree
from finmono.frobcheck import power_sum_integrality_oracle
from finmono.sheaftrace import gauss_sum_over

logger = logging.getLogger(__name__)

LEMMA_CASES = ((2, 1, 3), (2, 2, 3), (3, 1, 2), (4, 3, 2))
UPPER_BOUND_CONDUCTORS = (1, 3, 4, 5, 7, 8, 9, 12, 15)
HASSE_DAVENPORT_PRIMES = (3, 5)
CHARACTER_SUM_FIELDS = ((3, 2), (5, 1), (5, 2), (7, 1))


class SuiteResult(BaseModel):
    """Outcome of one suite."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    name: str
    passed: bool
    checks: int = Field(description="Identities verified before stopping.")
    failure: str | None = Field(default=None, description="First failing identity.")


def _result(name: str, checks: int, failure: str | None) -> SuiteResult:
    if failure is not None:
        logger.warning("suite %s failed: %s", name, failure)
    return SuiteResult(
        name=name, passed=failure is None, checks=checks, failure=failure
    )


# ==============================================================================
# Suites
# ==============================================================================


def mlcm_suite(rmax: int = 12, **_: Any) -> SuiteResult:
    """Closed form against ``m_lcm(1, r)``; ``m_lcm(c, r)`` against its upper bound."""
    checks = 0
    for r in range(1, rmax + 1):
        closed, lcm = m_closed_form_q(r), m_lcm(1, r)
        if closed != lcm:
            failure = f"m_closed_form_q({r}) = {closed} != m_lcm(1, {r}) = {lcm}"
            return _result("mlcm", checks, failure)
        checks += 1
    for c in UPPER_BOUND_CONDUCTORS:
        for r in range(1, min(rmax, 6) + 1):
            lcm, upper = m_lcm(c, r), m_upper_bound(c, r)
            if upper % lcm:
                return _result(
                    "mlcm",
                    checks,
                    f"m_lcm({c}, {r}) = {lcm} does not divide m_upper_bound = {upper}",
                )
            checks += 1
    return _result("mlcm", checks, None)


def adams_suite(rmax: int = 8, mmax: int = 40, **_: Any) -> SuiteResult:
    """``sum_i (-1)**i rank_i == r`` and the even part equals ``adams_even_rank``."""
    checks = 0
    for r in range(1, rmax + 1):
        for m in range(1, mmax + 1):
            ranks = [adams_component_rank(r, m, i) for i in range(m)]
            alternating = sum(
                rank if i % 2 == 0 else -rank for i, rank in enumerate(ranks)
            )
            if alternating != r:
                return _result(
                    "adams",
                    checks,
                    f"alternating rank sum for r={r}, M={m} is {alternating}, not {r}",
                )
            even = sum(ranks[0::2])
            if even != adams_even_rank(r, m):
                return _result(
                    "adams",
                    checks,
                    f"even rank for r={r}, M={m}: {even} != {adams_even_rank(r, m)}",
                )
            checks += 1
    return _result("adams", checks, None)


def lemma_suite(trials: int = 1000, seed: int = 0, **_: Any) -> SuiteResult:
    """The power-sum integrality criterion on random samples, with witnesses."""
    checks = 0
    for r, e, p in LEMMA_CASES:
        report = power_sum_integrality_oracle(r, e, p, trials=trials, seed=seed)
        if report.counterexample is not None:
            return _result(
                "lemma",
                checks,
                f"(r={r}, e={e}, p={p}): integral power sums 1..{report.N} but "
                f"non-integral elements {report.counterexample}",
            )
        checks += 1
    return _result("lemma", checks, None)


def gauss_suite(pmax: int = 23, **_: Any) -> SuiteResult:
    """``G**2 == (-1)**((p-1)/2) p`` and ``|g(chi)|**2 == q`` for non-trivial chi."""
    checks = 0
    for p in primes_up_to(pmax):
        if p == 2:
            continue
        g = quadratic_gauss_sum(p)
        expected = CycNum.from_rational(p, gauss_square_sign(p) * p)
        if g * g != expected:
            failure = f"G**2 != {gauss_square_sign(p) * p} for p={p}"
            return _result("gauss", checks, failure)
        checks += 1
    for p, degree in CHARACTER_SUM_FIELDS:
        level = field_of_degree(p, degree)
        level.ensure_tables()
        order = level.size - 1
        for j in range(1, order):
            g = character_gauss_sum(level, j, order)
            if g * g.conjugate() != CycNum.from_rational(g.conductor, level.size):
                return _result(
                    "gauss",
                    checks,
                    f"|g(chi_{j})|**2 != {level.size} over F_{p}^{degree}",
                )
            checks += 1
    return _result("gauss", checks, None)


def hasse_davenport_suite(mmax: int = 5, **_: Any) -> SuiteResult:
    """``G**m == -G_m`` with ``G_m = sum_x psi(Tr(x**2))`` over ``F_{p**m}``."""
    checks = 0
    for p in HASSE_DAVENPORT_PRIMES:
        g = quadratic_gauss_sum(p)
        for m in range(1, mmax + 1):
            g_m = gauss_sum_over(field_of_degree(p, m))
            if g**m != -g_m:
                return _result("hasse_davenport", checks, f"G**{m} != -G_{m} for p={p}")
            checks += 1
    return _result("hasse_davenport", checks, None)


SUITES: dict[str, Callable[..., SuiteResult]] = {
    "mlcm": mlcm_suite,
    "adams": adams_suite,
    "lemma": lemma_suite,
    "gauss": gauss_suite,
    "hasse_davenport": hasse_davenport_suite,
}


def run_suites(names: list[str] | None = None, **sizes: Any) -> list[SuiteResult]:
    """Run the named suites (all by default) with shared size keywords.

    Raises:
        KeyError: For an unknown suite name.
    """
    selected = list(SUITES) if not names else names
    results = []
    for name in selected:
        if name not in SUITES:
            msg = f"unknown suite {name!r}; choose from {', '.join(SUITES)}"
            raise KeyError(msg)
        results.append(SUITES[name](**sizes))
    return results


# ==============================================================================
# Self-test
# ==============================================================================

PUBLISHED_ARTIN_SCHREIER = (
    # (n, M, R, N) at p = 2
    (3, 12, 13, 40),
    (4, 12, 146, 319),
    (5, 120, 1152162, 2304402),
)
PUBLISHED_TRACE_MULTIPLE = 160  # p = 2, n = 3


def selftest() -> SuiteResult:
    """Reproduce the published Artin-Schreier bounds and the hypergeometric report."""
    checks = 0
    for n, m_order, rank, n_bound in PUBLISHED_ARTIN_SCHREIER:
        report = example_bounds_artin_schreier(2, n, Criterion.EIGEN)
        got = (report.M, report.R, report.N)
        if got != (m_order, rank, n_bound):
            return _result(
                "selftest",
                checks,
                f"Artin-Schreier p=2 n={n}: (M, R, N) = {got}, "
                f"expected {(m_order, rank, n_bound)}",
            )
        checks += 1
    trace = example_bounds_artin_schreier(2, 3, Criterion.TRACE)
    if trace.N != PUBLISHED_TRACE_MULTIPLE:
        return _result(
            "selftest",
            checks,
            f"trace-integrality bound for p=2 n=3 is {trace.N}, "
            f"expected {PUBLISHED_TRACE_MULTIPLE}",
        )
    checks += 1
    hyp = example_bounds_hypergeometric(2, 1, 3, 2, 1)
    readings = [r.M for r in hyp.m_readings]
    if readings != [4, 12, 36] or hyp.entry(BoundName.EIGEN_CURVE).N != 44:
        return _result(
            "selftest",
            checks,
            f"hypergeometric p=2 m=3 a=2 b=1: readings {readings}, N = {hyp.N}",
        )
    checks += 1
    return _result("selftest", checks, None)


__all__ = [
    "SUITES",
    "SuiteResult",
    "adams_suite",
    "gauss_suite",
    "hasse_davenport_suite",
    "lemma_suite",
    "mlcm_suite",
    "run_suites",
    "selftest",
]
