"""Scans over extension degrees and the finite-monodromy verdict."""

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
from finmono.pipeline.scan import (
    COST_FORMULAS,
    ScanRefusedError,
    cost_estimate,
    decide,
    family_bounds,
    largest_feasible_degree,
    point_count,
    recheck_witness,
    scan,
    violates,
    write_point_csv,
)

__all__ = [
    "COST_FORMULAS",
    "BoundUsed",
    "DegreeCoverage",
    "ScanBudget",
    "ScanRefusedError",
    "ScanReport",
    "Timing",
    "Verdict",
    "VerdictKind",
    "Witness",
    "cost_estimate",
    "decide",
    "family_bounds",
    "largest_feasible_degree",
    "point_count",
    "recheck_witness",
    "scan",
    "violates",
    "write_point_csv",
]
