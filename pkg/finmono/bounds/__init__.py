"""Effective bounds for finiteness of monodromy, computed exactly."""

from finmono.bounds.formulas import (
    a_constant,
    adams_component_rank,
    adams_even_rank,
    cyclotomic_degree,
    eigen_curve_for_order,
    integrality_multiplier,
    m_closed_form_artin_schreier,
    m_closed_form_hypergeometric,
    m_closed_form_q,
    m_lcm,
    m_upper_bound,
    n_eigen_curve,
    n_eigen_general,
    n_integral_curve,
    n_integral_general,
    n_power_sums,
    n_traces_curve,
    n_traces_general,
)
from finmono.bounds.models import (
    BoundEntry,
    BoundName,
    BoundReport,
    Criterion,
    CurveParams,
    EigenBound,
    GeneralParams,
    MReading,
)
from finmono.bounds.reports import (
    HYP_M_READINGS,
    PUBLISHED_HYP_EIGEN_BOUNDS,
    artin_schreier_params,
    curve_report,
    example_bounds_artin_schreier,
    example_bounds_hypergeometric,
    general_report,
    hypergeometric_params,
)

__all__ = [
    "HYP_M_READINGS",
    "PUBLISHED_HYP_EIGEN_BOUNDS",
    "BoundEntry",
    "BoundName",
    "BoundReport",
    "Criterion",
    "CurveParams",
    "EigenBound",
    "GeneralParams",
    "MReading",
    "a_constant",
    "adams_component_rank",
    "adams_even_rank",
    "artin_schreier_params",
    "curve_report",
    "cyclotomic_degree",
    "eigen_curve_for_order",
    "example_bounds_artin_schreier",
    "example_bounds_hypergeometric",
    "general_report",
    "hypergeometric_params",
    "integrality_multiplier",
    "m_closed_form_artin_schreier",
    "m_closed_form_hypergeometric",
    "m_closed_form_q",
    "m_lcm",
    "m_upper_bound",
    "n_eigen_curve",
    "n_eigen_general",
    "n_integral_curve",
    "n_integral_general",
    "n_power_sums",
    "n_traces_curve",
    "n_traces_general",
]
