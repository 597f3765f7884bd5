"""Exact trace functions of sheaf families and user trace tables."""

from finmono.sheaftrace.engines import (
    ExcludedPointError,
    Family,
    UnsupportedFamilyError,
    base_level,
    check_evaluable,
    family_metadata,
    family_trace,
    gauss_sum_over,
    point_level,
    trace_as,
    trace_hyp,
    trace_table,
)
from finmono.sheaftrace.families import (
    ArtinSchreierFamily,
    FamilyMetadata,
    HypergeometricFamily,
    IncompleteTableError,
    SheafFamily,
    TableEntry,
    TableFamily,
)
from finmono.sheaftrace.tables import (
    TableFormatError,
    load_trace_table,
    read_trace_table,
    write_trace_table,
)
from finmono.sheaftrace.values import NormalizedTrace

__all__ = [
    "ArtinSchreierFamily",
    "ExcludedPointError",
    "Family",
    "FamilyMetadata",
    "HypergeometricFamily",
    "IncompleteTableError",
    "NormalizedTrace",
    "SheafFamily",
    "TableEntry",
    "TableFamily",
    "TableFormatError",
    "UnsupportedFamilyError",
    "base_level",
    "check_evaluable",
    "family_metadata",
    "family_trace",
    "gauss_sum_over",
    "load_trace_table",
    "point_level",
    "read_trace_table",
    "trace_as",
    "trace_hyp",
    "trace_table",
    "write_trace_table",
]
