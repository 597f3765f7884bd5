"""Scan every point of every extension up to a bound and issue a verdict.

A degree's points are split into deterministic chunks that are evaluated
either in-process or by a :class:`~concurrent.futures.ProcessPoolExecutor`.
Every point of a started degree is evaluated, results are merged in point
order and the smallest violating ``(m, index)`` becomes the witness, so
reports do not depend on the worker count.
"""

from __future__ import annotations

import csv
import logging
import math
import time
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from finmono.bounds import (
    BoundName,
    BoundReport,
    Criterion,
    curve_report,
    example_bounds_artin_schreier,
    example_bounds_hypergeometric,
    general_report,
    m_lcm,
)
from finmono.config import RuntimeLimits
from finmono.finitefield import FFElem
from finmono.frobcheck import FrobData, frobenius_char_poly, trace_data
from finmono.pipeline.models import (
    BoundUsed,
    DegreeCoverage,
    ScanBudget,
    ScanReport,
    Timing,
    Verdict,
    VerdictKind,
    Witness,
)
from finmono.sheaftrace import (
    ArtinSchreierFamily,
    Family,
    HypergeometricFamily,
    TableFamily,
    UnsupportedFamilyError,
    check_evaluable,
    family_metadata,
    point_level,
)

logger = logging.getLogger(__name__)

CHUNKS_PER_WORKER = 4

COST_FORMULAS = {
    "artin_schreier": "q^m points x sum_{k=1..K} q^(mk) summands",
    "hypergeometric": "(q^m - 1) points x sum_{k=1..K} (q^(mk) - 1)^(a+b-1) summands",
    "table": "points x K table lookups",
}
COST_FORMULA_NOTE = "K = rank for the eigen criterion, 1 for the trace criterion"

_HEADLINES = {
    Criterion.EIGEN: (BoundName.EIGEN_CURVE, BoundName.EIGEN_GENERAL),
    Criterion.TRACE: (
        BoundName.TRACE_INTEGRALITY_CURVE,
        BoundName.TRACE_INTEGRALITY_GENERAL,
    ),
}


class ScanRefusedError(UnsupportedFamilyError):
    """The engines cannot evaluate the family; its bounds are still attached."""

    def __init__(self, message: str, bounds: BoundReport | None = None) -> None:
        super().__init__(message)
        self.bounds = bounds


# ==============================================================================
# Bounds, counts and costs
# ==============================================================================


def family_bounds(
    fam: Family, criterion: Criterion, limits: RuntimeLimits | None = None
) -> BoundReport | None:
    """Curve bounds for the built-in families; declared bounds for tables.

    A table with general parameters gets the general bounds, one with curve
    metadata the curve bounds, and ``None`` otherwise.
    """
    limits = limits or RuntimeLimits()
    if isinstance(fam, ArtinSchreierFamily):
        return example_bounds_artin_schreier(
            fam.p, fam.n, criterion, e_override=fam.e_override
        )
    if isinstance(fam, HypergeometricFamily):
        return example_bounds_hypergeometric(
            fam.p, fam.f_deg, fam.m, fam.a, fam.b, criterion
        )
    meta = family_metadata(fam)
    if meta.general is not None:
        return general_report(
            meta.general, criterion, max_digits=limits.max_digits, theorem="table"
        )
    curve = meta.curve_params()
    if curve is not None:
        return curve_report(curve, criterion, theorem="table")
    return None


def _bound_used(
    report: BoundReport, criterion: Criterion, bound_choice: BoundName | None
) -> BoundUsed:
    if bound_choice is None:
        names = _HEADLINES[criterion]
        entry = next(e for e in report.bounds if e.name in names)
    else:
        entry = report.entry(bound_choice)
    return BoundUsed(
        theorem=report.theorem,
        name=entry.name,
        N=entry.N,
        N_magnitude=entry.N_magnitude,
    )


def _powers_needed(fam: Family, criterion: Criterion) -> int:
    return family_metadata(fam).rank if criterion is Criterion.EIGEN else 1


def point_count(fam: Family, m: int) -> int:
    """``|X(F_{q^m})|``: the whole field, the field minus zero, or the table ids."""
    if isinstance(fam, TableFamily):
        return len(fam.points_at(m))
    size = fam.q**m
    return size if isinstance(fam, ArtinSchreierFamily) else size - 1


def cost_estimate(fam: Family, m: int, criterion: Criterion) -> int:
    """Summand evaluations needed to check every point of degree ``m``.

    See :data:`COST_FORMULAS`; ``K`` is the number of power sums per point.
    """
    powers = _powers_needed(fam, criterion)
    points = point_count(fam, m)
    if isinstance(fam, TableFamily):
        return points * powers
    if isinstance(fam, ArtinSchreierFamily):
        return points * sum(fam.q ** (m * k) for k in range(1, powers + 1))
    free = fam.a + fam.b - 1
    return points * sum((fam.q ** (m * k) - 1) ** free for k in range(1, powers + 1))


def _largest_field(fam: Family, m: int, criterion: Criterion) -> int:
    if isinstance(fam, TableFamily):
        return 0
    return fam.q ** (m * _powers_needed(fam, criterion))


def _degree_blocker(
    fam: Family,
    m: int,
    criterion: Criterion,
    budget: ScanBudget,
    limits: RuntimeLimits,
    cost_left: int | None,
) -> str | None:
    field = _largest_field(fam, m, criterion)
    if field > budget.max_field_size or field > limits.max_table_size:
        cap = min(budget.max_field_size, limits.max_table_size)
        return f"degree {m} needs a field of size {field} > {cap}"
    if isinstance(fam, TableFamily) and not fam.points_at(m):
        return f"trace table has no points at degree {m}"
    if cost_left is not None and cost_estimate(fam, m, criterion) > cost_left:
        return f"degree {m} exceeds the remaining cost budget {cost_left}"
    return None


def largest_feasible_degree(
    fam: Family,
    criterion: Criterion,
    budget: ScanBudget,
    *,
    limits: RuntimeLimits | None = None,
    up_to: int | None = None,
) -> int:
    """Largest ``d`` such that degrees ``1..d`` fit the budget completely.

    ``up_to`` lowers the ceiling further; ``budget.max_degree`` always applies.
    """
    limits = limits or RuntimeLimits()
    ceiling = budget.max_degree if up_to is None else min(budget.max_degree, up_to)
    points_left, cost_left = budget.max_points, budget.max_cost
    m = 0
    while m < ceiling:
        nxt = m + 1
        if _degree_blocker(fam, nxt, criterion, budget, limits, cost_left):
            break
        count = point_count(fam, nxt)
        if count > points_left:
            break
        points_left -= count
        if cost_left is not None:
            cost_left -= cost_estimate(fam, nxt, criterion)
        m = nxt
    return m


# ==============================================================================
# Point evaluation
# ==============================================================================


def _points(fam: Family, m: int) -> list[int] | list[str]:
    if isinstance(fam, TableFamily):
        return fam.points_at(m)
    start = 0 if isinstance(fam, ArtinSchreierFamily) else 1
    return list(range(start, fam.q**m))


def _evaluate_point(
    fam: Family,
    criterion: Criterion,
    m: int,
    point: int | str,
    m_order: int,
    max_table_size: int,
) -> FrobData:
    where: FFElem | str
    if isinstance(fam, TableFamily):
        where = str(point)
    else:
        where = FFElem(point_level(fam, m), int(point))
    if criterion is Criterion.EIGEN:
        return frobenius_char_poly(
            fam, m, where, m_order, max_table_size=max_table_size
        )
    return trace_data(fam, m, where, max_table_size=max_table_size)


def _evaluate_chunk(
    task: tuple[Family, Criterion, int, list[int] | list[str], int, int],
) -> list[FrobData]:
    fam, criterion, m, points, m_order, max_table_size = task
    return [
        _evaluate_point(fam, criterion, m, point, m_order, max_table_size)
        for point in points
    ]


def _chunks(points: list, workers: int) -> list[list]:
    size = max(1, math.ceil(len(points) / (workers * CHUNKS_PER_WORKER)))
    return [points[i : i + size] for i in range(0, len(points), size)]


def _run_degree(
    fam: Family,
    criterion: Criterion,
    m: int,
    points: list[int] | list[str],
    m_order: int,
    workers: int,
    max_table_size: int,
) -> list[FrobData]:
    tasks = [
        (fam, criterion, m, chunk, m_order, max_table_size)
        for chunk in _chunks(points, workers)
    ]
    if workers == 1 or len(tasks) == 1:
        results = [_evaluate_chunk(task) for task in tasks]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_evaluate_chunk, tasks))
    return [data for chunk in results for data in chunk]


def violates(data: FrobData, criterion: Criterion) -> bool:
    if criterion is Criterion.EIGEN:
        return not data.eigen_unity
    return not data.trace_integral


# ==============================================================================
# Scan
# ==============================================================================


def _eigen_order(fam: Family, report: BoundReport | None) -> int:
    if report is not None:
        return report.M
    meta = family_metadata(fam)
    return m_lcm(meta.cond_e, meta.rank)


def scan(
    fam: Family,
    criterion: Criterion = Criterion.EIGEN,
    budget: ScanBudget | None = None,
    *,
    bound_choice: BoundName | None = None,
    limits: RuntimeLimits | None = None,
    record_points: bool = False,
) -> ScanReport:
    """Check the criterion at every point of degree ``1..min(N, max_degree)``.

    Returns ``Finite`` only when every degree up to the theorem bound ``N``
    was covered without a violation, ``Infinite`` at the first violating
    point and ``Inconclusive`` otherwise.

    Raises:
        UnsupportedFamilyError: If the engines cannot evaluate ``fam``.
        IncompleteTableError: If a table lacks a power sum the eigen check needs.
        ValueError: For the ``traces`` criterion, which needs a model to compare to.
    """
    budget = budget or ScanBudget()
    limits = limits or RuntimeLimits()
    if criterion is Criterion.TRACES:
        msg = "scans decide the eigen or trace criterion, not traces"
        raise ValueError(msg)
    check_evaluable(fam)
    started = time.perf_counter()

    report = family_bounds(fam, criterion, limits)
    bound = _bound_used(report, criterion, bound_choice) if report else None
    m_order = _eigen_order(fam, report)
    target = budget.max_degree
    if bound is not None and bound.N is not None:
        target = min(target, bound.N)
    logger.info(
        "scanning %s (%s criterion) through degree %d",
        fam.kind,
        criterion.value,
        target,
    )

    degrees: list[DegreeCoverage] = []
    point_results: list[FrobData] = []
    notes: list[str] = []
    witness: Witness | None = None
    points_left, cost_left = budget.max_points, budget.max_cost
    for m in range(1, target + 1):
        blocker = _degree_blocker(fam, m, criterion, budget, limits, cost_left)
        if blocker:
            logger.warning("scan stopped: %s", blocker)
            notes.append(blocker)
            break
        points = _points(fam, m)
        total = len(points)
        truncated = total > points_left
        if truncated:
            points = points[:points_left]
        cost = cost_estimate(fam, m, criterion)
        data = _run_degree(
            fam,
            criterion,
            m,
            points,
            m_order,
            budget.worker_count,
            limits.max_table_size,
        )
        bad = [i for i, d in enumerate(data) if violates(d, criterion)]
        degrees.append(
            DegreeCoverage(
                m=m, points=total, checked=len(points), violations=len(bad), cost=cost
            )
        )
        logger.debug(
            "degree %d: %d/%d points, %d violations", m, len(points), total, len(bad)
        )
        if record_points:
            point_results.extend(data)
        points_left -= len(points)
        if cost_left is not None:
            cost_left -= cost
        if bad:
            first = data[bad[0]]
            witness = Witness(
                degree=m,
                point=first.point,
                point_index=bad[0],
                predicate=criterion,
                data=first,
            )
            break
        if truncated:
            msg = f"point budget exhausted inside degree {m}"
            logger.warning("scan stopped: %s", msg)
            notes.append(msg)
            break

    covered = 0
    for d in degrees:
        if not d.complete or d.violations:
            break
        covered = d.m
    if witness is not None:
        kind = VerdictKind.INFINITE
    elif bound is not None and bound.N is not None and covered >= bound.N:
        kind = VerdictKind.FINITE
    else:
        kind = VerdictKind.INCONCLUSIVE
        if bound is None:
            notes.append("no theorem bound is available for this family")
        elif bound.N is None:
            notes.append(f"theorem bound has {bound.N_magnitude} digits")
        else:
            notes.append(f"theorem bound N={bound.N} not reached")

    verdict = Verdict(
        kind=kind,
        witness=witness,
        checked_up_to=covered,
        bound_used=bound,
        notes=notes,
    )
    logger.info("verdict %s, degrees covered through %d", kind.value, covered)
    return ScanReport(
        family=fam,
        criterion=criterion,
        bound=bound,
        budget=budget,
        M=m_order if criterion is Criterion.EIGEN else None,
        cost_formula=f"{COST_FORMULAS[fam.kind]}; {COST_FORMULA_NOTE}",
        degrees=degrees,
        verdict=verdict,
        point_results=point_results,
        timing=Timing(
            elapsed_seconds=time.perf_counter() - started,
            worker_count=budget.worker_count,
        ),
    )


def decide(
    fam: Family,
    criterion: Criterion = Criterion.EIGEN,
    budget: ScanBudget | None = None,
    *,
    limits: RuntimeLimits | None = None,
) -> ScanReport:
    """Scan to the theorem bound when the budget allows it, else as far as it does.

    Raises:
        ScanRefusedError: If the engines cannot evaluate ``fam``; the
            exception carries the family's bound report.
    """
    limits = limits or RuntimeLimits()
    budget = budget or ScanBudget()
    try:
        check_evaluable(fam)
    except UnsupportedFamilyError as exc:
        raise ScanRefusedError(str(exc), family_bounds(fam, criterion, limits)) from exc

    report = family_bounds(fam, criterion, limits)
    n_bound = _bound_used(report, criterion, None).N if report else None
    feasible = largest_feasible_degree(
        fam, criterion, budget, limits=limits, up_to=n_bound
    )
    if n_bound is not None and feasible >= n_bound:
        return scan(
            fam,
            criterion,
            budget.model_copy(update={"max_degree": n_bound}),
            limits=limits,
        )
    capped = budget.model_copy(update={"max_degree": feasible})
    result = scan(fam, criterion, capped, limits=limits)
    note = f"largest feasible degree under the budget is {feasible}"
    return result.model_copy(
        update={
            "verdict": result.verdict.model_copy(
                update={"notes": [*result.verdict.notes, note]}
            )
        }
    )


def recheck_witness(
    report: ScanReport, *, limits: RuntimeLimits | None = None
) -> bool:
    """Re-evaluate an ``Infinite`` verdict's witness in this process."""
    witness = report.verdict.witness
    if witness is None:
        msg = "report has no witness to re-check"
        raise ValueError(msg)
    limits = limits or RuntimeLimits()
    point: int | str = witness.point
    if not isinstance(report.family, TableFamily):
        point = int(witness.point)
    data = _evaluate_point(
        report.family,
        report.criterion,
        witness.degree,
        point,
        report.M or 1,
        limits.max_table_size,
    )
    return violates(data, report.criterion)


def write_point_csv(report: ScanReport, path: str | Path) -> int:
    """Write one row per recorded point; returns the number of rows."""
    with Path(path).open("w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle)
        writer.writerow(
            [
                "m",
                "point",
                "trace_integral",
                "eigen_unity",
                "conductor",
                "gauss_exponent",
                "numerator",
                "failure",
            ]
        )
        for data in report.point_results:
            trace = data.power_sums[0]
            writer.writerow(
                [
                    data.degree,
                    data.point,
                    data.trace_integral,
                    "" if data.eigen_unity is None else data.eigen_unity,
                    trace.numerator.conductor,
                    trace.gauss_exponent,
                    " ".join(
                        f"{c.numerator}/{c.denominator}" for c in trace.numerator.coords
                    ),
                    data.failure or "",
                ]
            )
    logger.info("wrote %d point rows to %s", len(report.point_results), path)
    return len(report.point_results)
