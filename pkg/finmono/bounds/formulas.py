"""Exact evaluation of every explicit constant and bound.

All floors of logarithms go through :func:`finmono.arith.floor_two_log_plus`
and :func:`finmono.arith.floor_log`; the only floating point in this module
is the size estimate that decides whether the general eigenvalue bound is
small enough to materialize. Past that point the bound's digit count comes
from an mpmath logarithm.

``e**(4/3)`` in ``A_n`` is replaced by the rational upper bound
``3794/1000``. Every ``N`` is non-decreasing in ``A_n``, so rounding up keeps
the bounds valid.
"""

from __future__ import annotations

import logging
import math
from fractions import Fraction

import mpmath
from sympy import n_order, primefactors

from finmono.arith import (
    ParameterError,
    binomial,
    euler_phi,
    floor_log,
    floor_two_log_plus,
    p_adic_valuation,
    primes_up_to,
)
from finmono.bounds.models import CurveParams, EigenBound, GeneralParams
from finmono.config import DEFAULT_MAX_DIGITS

logger = logging.getLogger(__name__)

E_FOUR_THIRDS_UPPER = Fraction(3794, 1000)
A_PREFACTOR = Fraction(2**17, 3**4)
LOG_ESTIMATE_DPS = 60


def a_constant(n: int) -> Fraction:
    """``(2**17 / 3**4) * e**(4/3) * 13**n * (n+2)!`` with ``e**(4/3)`` rounded up."""
    if n < 0:
        msg = f"ambient dimension must be >= 0, got {n}"
        raise ParameterError(msg)
    return A_PREFACTOR * E_FOUR_THIRDS_UPPER * 13**n * math.factorial(n + 2)


# ==============================================================================
# Orders of roots of unity
# ==============================================================================


def cyclotomic_degree(order: int, cond_e: int) -> int:
    """``[E(zeta_order) : E]`` for ``E = Q(zeta_cond_e)``."""
    return euler_phi(math.lcm(order, cond_e)) // euler_phi(cond_e)


def m_lcm(cond_e: int, r: int) -> int:
    """Least common multiple of all ``n`` with ``[E(zeta_n) : E] <= r``.

    Valid ``n`` are closed under divisors, so the lcm is the product over
    primes of the largest valid prime power. A prime not dividing ``cond_e``
    contributes only if ``lambda - 1 <= r``.
    """
    if cond_e < 1 or r < 1:
        msg = f"m_lcm needs cond_e >= 1 and r >= 1, got ({cond_e}, {r})"
        raise ParameterError(msg)
    candidates = set(primes_up_to(r + 1))
    candidates.update(_prime_divisors(cond_e))
    result = 1
    for prime in sorted(candidates):
        k = 0
        while cyclotomic_degree(prime ** (k + 1), cond_e) <= r:
            k += 1
        result *= prime**k
    return result


def _prime_divisors(n: int) -> list[int]:
    return [int(q) for q in primefactors(n)]


def closed_form_exponent(prime: int, r: int) -> int:
    """``floor(1 + log_prime(r / (prime - 1)))`` for ``prime <= r + 1``."""
    return 1 + floor_log(prime, Fraction(r, prime - 1))


def m_closed_form_q(r: int) -> int:
    """``M(Q, r)`` from its product formula over primes ``<= r + 1``."""
    if r < 1:
        msg = f"r must be >= 1, got {r}"
        raise ParameterError(msg)
    result = 1
    for prime in primes_up_to(r + 1):
        result *= prime ** closed_form_exponent(prime, r)
    return result


def m_closed_form_artin_schreier(p: int, n: int) -> int:
    """``M(Q(zeta_p), n - 1)`` from its product formula."""
    r = n - 1
    result = p ** (1 + floor_log(p, r))
    for prime in primes_up_to(r + 1):
        if prime != p:
            result *= prime ** closed_form_exponent(prime, r)
    return result


def m_upper_bound(cond_e: int, r: int) -> int:
    """``M(Q, r * phi(cond_e))``, a multiple of ``m_lcm(cond_e, r)``."""
    return m_lcm(1, r * euler_phi(cond_e))


def m_closed_form_hypergeometric(p: int, m: int, a: int, reading: str) -> int:
    """``M(Q(zeta_{mp}), a)`` from its product formula under one reading.

    The exponent of a prime ``lambda | m`` is ``floor(ord_lambda + log_lambda a)``
    where ``ord_lambda`` is read as:

    - ``"valuation_of_a"``: the lambda-adic valuation of ``a``;
    - ``"valuation_of_m"``: the lambda-adic valuation of ``m``;
    - ``"multiplicative_order"``: the order of ``a`` modulo ``lambda`` (the
      valuation of ``a`` when ``lambda`` divides ``a``).
    """
    result = p ** (1 + floor_log(p, a))
    m_primes = _prime_divisors(m)
    for prime in m_primes:
        if reading == "valuation_of_a":
            order = p_adic_valuation(a, prime)
        elif reading == "valuation_of_m":
            order = p_adic_valuation(m, prime)
        elif reading == "multiplicative_order":
            if a % prime:
                order = int(n_order(a, prime))
            else:
                order = p_adic_valuation(a, prime)
        else:
            msg = f"unknown reading {reading!r}"
            raise ParameterError(msg)
        result *= prime ** (order + floor_log(prime, a))
    for prime in primes_up_to(a + 1):
        if prime != p and prime not in m_primes:
            result *= prime ** closed_form_exponent(prime, a)
    return result


# ==============================================================================
# Adams-power ranks
# ==============================================================================


def adams_component_rank(r: int, m_order: int, i: int) -> int:
    """``C(r + M - i - 1, M) * C(M - 1, i)``."""
    return binomial(r + m_order - i - 1, m_order) * binomial(m_order - 1, i)


def adams_even_rank(r: int, m_order: int) -> int:
    """``R``: the sum of the even-index components with ``i <= r - 1``."""
    return sum(
        adams_component_rank(r, m_order, i)
        for i in range(0, min(r, m_order), 2)
    )


# ==============================================================================
# Trace-identity bounds
# ==============================================================================


def n_traces_curve(r: int, q: int, b1: int, alpha_max: Fraction | int) -> int:
    """``2r + floor(2 log+_q(2 r**2 (b1 + alpha_max)))``."""
    alpha = Fraction(alpha_max)
    if alpha < 0:
        msg = f"alpha_max must be >= 0, got {alpha}"
        raise ParameterError(msg)
    argument = 2 * r * r * (b1 + alpha)
    if argument == 0:
        return 2 * r
    return 2 * r + floor_two_log_plus(q, argument)


def n_traces_general(r: int, q: int, ambient_n: int, complexity: int) -> int:
    """``2r + floor(2 log+_q(2 A_n C**2))``."""
    return 2 * r + floor_two_log_plus(
        q, 2 * a_constant(ambient_n) * complexity * complexity
    )


# ==============================================================================
# Eigenvalue bounds
# ==============================================================================


def n_eigen_curve(params: CurveParams) -> EigenBound:
    """``N = 2R + floor(2 log+_q(2 R**2 (b1 + e)))`` with ``M`` and ``R``."""
    return eigen_curve_for_order(params, m_lcm(params.cond_e, params.r))


def eigen_curve_for_order(params: CurveParams, m_order: int) -> EigenBound:
    """The curve eigenvalue bound for a given root-of-unity order ``M``."""
    rank = adams_even_rank(params.r, m_order)
    n_bound = 2 * rank + floor_two_log_plus(
        params.q, 2 * rank * rank * (params.b1 + params.e_breaks)
    )
    return EigenBound(M=m_order, R=rank, N=n_bound)


def _log2(value: Fraction) -> float:
    return math.log2(value.numerator) - math.log2(value.denominator)


def _general_eigen_unmaterialized(
    params: GeneralParams, m_order: int, rank: int
) -> int:
    """The general eigen bound from a high-precision logarithm of its argument."""
    exact = a_constant(params.ambient_n)
    with mpmath.workdps(LOG_ESTIMATE_DPS):
        a_n = mpmath.mpf(exact.numerator) / exact.denominator
        log_head = (m_order - 1) * mpmath.log(a_n)
        log_head += m_order * mpmath.log(params.complexity)
        tail = params.r * params.c_x / mpmath.exp(log_head)
        log_argument = mpmath.log(2 * a_n) + 2 * (log_head + mpmath.log1p(tail))
        return 2 * rank + int(mpmath.floor(2 * log_argument / mpmath.log(params.q)))


def n_eigen_general(
    params: GeneralParams, max_digits: int = DEFAULT_MAX_DIGITS
) -> EigenBound:
    """``N = 2R + floor(2 log+_q(2 A_n (A_n**(M-1) C**M + r c_X)**2))``.

    When ``A_n**(M-1) C**M`` would exceed ``max_digits`` decimal digits, the
    argument is not materialized: the result carries ``N = None`` and
    ``N_magnitude``, the number of decimal digits of ``N`` evaluated from a
    ``LOG_ESTIMATE_DPS``-digit logarithm.
    """
    m_order = m_lcm(params.cond_e, params.r)
    rank = adams_even_rank(params.r, m_order)
    a_n = a_constant(params.ambient_n)
    log2_inner = (m_order - 1) * _log2(a_n) + m_order * math.log2(params.complexity)
    digits = log2_inner * math.log10(2)
    if digits > max_digits:
        estimate = _general_eigen_unmaterialized(params, m_order, rank)
        logger.info(
            "general eigen bound argument has ~%d digits (> %d); reporting magnitude",
            int(digits),
            max_digits,
        )
        return EigenBound(M=m_order, R=rank, N_magnitude=len(str(estimate)))
    inner = a_n ** (m_order - 1) * params.complexity**m_order + params.r * params.c_x
    n_bound = 2 * rank + floor_two_log_plus(params.q, 2 * a_n * inner * inner)
    return EigenBound(M=m_order, R=rank, N=n_bound)


# ==============================================================================
# Power sums and trace integrality
# ==============================================================================


def n_power_sums(r: int, e_ram: int, p: int) -> int:
    """Number of power sums that decide integrality of ``r`` elements.

    ``r * (1 + floor(e / (p - 1) * (1 - p**-a)))`` with ``a = floor(log_p r)``.
    """
    if e_ram < 1:
        msg = f"ramification index must be >= 1, got {e_ram}"
        raise ParameterError(msg)
    a = floor_log(p, r)
    return r * (1 + (e_ram * (p**a - 1)) // ((p - 1) * p**a))


def integrality_multiplier(r: int, f_ram: int, p: int) -> int:
    """The power-sum count with ramification index ``r * f_ram``."""
    return n_power_sums(r, r * f_ram, p)


def _scaled(bound: EigenBound, multiplier: int) -> EigenBound:
    return bound.model_copy(
        update={"N": bound.N * multiplier, "multiplier": multiplier}
    )


def n_integral_curve(params: CurveParams) -> EigenBound:
    """Trace-integrality bound on a curve: multiplier times the eigen bound."""
    multiplier = integrality_multiplier(params.r, params.f_ram, params.p)
    return _scaled(n_eigen_curve(params), multiplier)


def n_integral_general(
    params: GeneralParams, max_digits: int = DEFAULT_MAX_DIGITS
) -> EigenBound:
    """Trace-integrality bound in general; inherits the digit-budget guard."""
    multiplier = integrality_multiplier(params.r, params.f_ram, params.p)
    eigen = n_eigen_general(params, max_digits)
    if eigen.N is None:
        estimate = _general_eigen_unmaterialized(params, eigen.M, eigen.R)
        return eigen.model_copy(
            update={
                "N_magnitude": len(str(estimate * multiplier)),
                "multiplier": multiplier,
            }
        )
    return _scaled(eigen, multiplier)
