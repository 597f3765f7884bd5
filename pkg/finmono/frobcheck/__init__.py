"""Frobenius characteristic polynomials and the finiteness predicates."""

from finmono.frobcheck.charpoly import (
    FrobData,
    check_eigen_unity,
    check_trace_integral,
    frobenius_char_poly,
    newton_char_poly,
    point_id,
    trace_data,
)
from finmono.frobcheck.oracle import (
    LocalElem,
    OracleReport,
    integral_prefix,
    power_sum_integrality_oracle,
    power_sums,
)

__all__ = [
    "FrobData",
    "LocalElem",
    "OracleReport",
    "check_eigen_unity",
    "check_trace_integral",
    "frobenius_char_poly",
    "integral_prefix",
    "newton_char_poly",
    "point_id",
    "power_sum_integrality_oracle",
    "power_sums",
    "trace_data",
]
