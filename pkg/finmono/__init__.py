"""Exact bounds and Frobenius scans for finiteness of monodromy."""

from finmono.bounds import (
    BoundReport,
    Criterion,
    CurveParams,
    GeneralParams,
    curve_report,
    example_bounds_artin_schreier,
    example_bounds_hypergeometric,
    general_report,
)
from finmono.canonicalization import (
    canonicalize_dict,
    canonicalize_model,
    sha256_hex_for_model,
)
from finmono.config import RuntimeLimits
from finmono.cyclotomic import CycNum, CycPoly
from finmono.finitefield import FFElem, FieldLevel
from finmono.frobcheck import FrobData, frobenius_char_poly, newton_char_poly
from finmono.pipeline import ScanBudget, ScanReport, Verdict, VerdictKind, decide, scan
from finmono.sheaftrace import (
    ArtinSchreierFamily,
    HypergeometricFamily,
    NormalizedTrace,
    TableFamily,
    read_trace_table,
    write_trace_table,
)

__version__ = "0.1.0"

__all__ = [
    "ArtinSchreierFamily",
    "BoundReport",
    "Criterion",
    "CurveParams",
    "CycNum",
    "CycPoly",
    "FFElem",
    "FieldLevel",
    "FrobData",
    "GeneralParams",
    "HypergeometricFamily",
    "NormalizedTrace",
    "RuntimeLimits",
    "ScanBudget",
    "ScanReport",
    "TableFamily",
    "Verdict",
    "VerdictKind",
    "__version__",
    "canonicalize_dict",
    "canonicalize_model",
    "curve_report",
    "decide",
    "example_bounds_artin_schreier",
    "example_bounds_hypergeometric",
    "frobenius_char_poly",
    "general_report",
    "newton_char_poly",
    "read_trace_table",
    "scan",
    "sha256_hex_for_model",
    "write_trace_table",
]
