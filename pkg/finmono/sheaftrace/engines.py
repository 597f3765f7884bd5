"""Exact trace functions of the built-in families.

Sums are accumulated as exponent counts: every summand is a root of unity
``zeta_c**e``, so a trace is the vector ``counts[e]`` handed once to
:meth:`CycNum.from_exponent_counts`. Points are enumerated through discrete
logarithms, which makes ``Tr(x**n)`` and ``chi(x)`` table lookups.
"""

from __future__ import annotations

import itertools
import logging
from fractions import Fraction

from finmono.bounds import artin_schreier_params, hypergeometric_params
from finmono.config import DEFAULT_MAX_TABLE_SIZE
from finmono.cyclotomic import CycNum
from finmono.finitefield import (
    FFElem,
    FieldLevel,
    build_extension,
    character_exponent,
    embed,
    field_of_degree,
    prime_field,
)
from finmono.sheaftrace.families import (
    ArtinSchreierFamily,
    FamilyMetadata,
    HypergeometricFamily,
    TableFamily,
    table_general_params,
)
from finmono.sheaftrace.values import NormalizedTrace

logger = logging.getLogger(__name__)


class UnsupportedFamilyError(ValueError):
    """Raised when an engine cannot evaluate a family's parameters."""


class ExcludedPointError(ValueError):
    """Raised for a point outside the family's base scheme (``t = 0`` on ``G_m``)."""


Family = ArtinSchreierFamily | HypergeometricFamily | TableFamily


# ==============================================================================
# Levels and points
# ==============================================================================


def base_level(fam: ArtinSchreierFamily | HypergeometricFamily) -> FieldLevel:
    """``F_q``: the field the family is defined over."""
    if isinstance(fam, ArtinSchreierFamily):
        return prime_field(fam.p)
    return field_of_degree(fam.p, fam.f_deg)


def point_level(
    fam: ArtinSchreierFamily | HypergeometricFamily, m: int
) -> FieldLevel:
    """``F_{q**m}``, built over :func:`base_level`."""
    return build_extension(base_level(fam), m)


def check_evaluable(fam: Family) -> None:
    """Raise :class:`UnsupportedFamilyError` unless the engine can run.

    The Artin-Schreier engine needs odd ``p`` not dividing ``n``; the
    hypergeometric engine needs ``m | q - 1`` and, once a Gauss-sum
    normalization is involved, odd ``p``.
    """
    if isinstance(fam, ArtinSchreierFamily):
        if fam.p == 2:
            msg = "the Artin-Schreier engine requires odd p; bounds are still available"
            raise UnsupportedFamilyError(msg)
        if fam.n % fam.p == 0:
            msg = f"the Artin-Schreier engine needs p={fam.p} not dividing n={fam.n}"
            raise UnsupportedFamilyError(msg)
    elif isinstance(fam, HypergeometricFamily):
        if (fam.q - 1) % fam.m:
            msg = (
                f"characters of order {fam.m} need m | q - 1, got q={fam.q}; "
                "raise f_deg"
            )
            raise UnsupportedFamilyError(msg)
        if fam.p == 2 and fam.a + fam.b > 1:
            msg = "the hypergeometric normalization requires odd p"
            raise UnsupportedFamilyError(msg)


# ==============================================================================
# Artin-Schreier
# ==============================================================================


def trace_as(
    fam: ArtinSchreierFamily,
    m: int,
    t: FFElem,
    *,
    max_table_size: int = DEFAULT_MAX_TABLE_SIZE,
) -> NormalizedTrace:
    """``-(1 / G**m) * sum_x psi(Tr(x**n + t x))`` over ``F_{p**m}``.

    Raises:
        UnsupportedFamilyError: For ``p = 2`` or ``p | n``.
        ValueError: If ``t`` does not live on a level of degree ``m``.
        BudgetExceededError: If the level is larger than ``max_table_size``.
    """
    check_evaluable(fam)
    level = t.level
    if level.degree != m:
        msg = f"point lives on a level of degree {level.degree}, expected {m}"
        raise ValueError(msg)
    level.ensure_tables(max_table_size)
    p, n = fam.p, fam.n
    order = level.size - 1
    traces = level.trace_by_log()
    counts = [0] * p
    counts[0] += 1
    if t.code == 0:
        for i in range(order):
            counts[traces[n * i % order]] += 1
    else:
        shift = level.log(t.code)
        for i in range(order):
            counts[(traces[n * i % order] + traces[(shift + i) % order]) % p] += 1
    numerator = -CycNum.from_exponent_counts(p, counts)
    return NormalizedTrace(numerator=numerator, gauss_exponent=m, gauss_p=p)


# ==============================================================================
# Hypergeometric
# ==============================================================================


def trace_hyp(
    fam: HypergeometricFamily,
    s: int,
    t: FFElem,
    *,
    max_table_size: int = DEFAULT_MAX_TABLE_SIZE,
) -> NormalizedTrace:
    """Normalized hypergeometric trace at ``t`` in ``F_{q**s}``.

    ``(-1)**(a+b-1) * sum psi(sum x_i - sum y_j) prod chi_i(x_i) prod conj(rho_j(y_j))``
    over ``x_1 ... x_a = t * y_1 ... y_b``, divided by ``G**(f*s*(a+b-1))``.
    ``x_a`` is eliminated by the constraint, so the loop runs over
    ``(q**s - 1)**(a+b-1)`` tuples of discrete logarithms.

    Raises:
        ExcludedPointError: If ``t = 0``.
        UnsupportedFamilyError: If ``m`` does not divide ``q - 1``.
        BudgetExceededError: If the level is larger than ``max_table_size``.
    """
    check_evaluable(fam)
    if t.code == 0:
        msg = "the hypergeometric family lives on G_m; t = 0 is excluded"
        raise ExcludedPointError(msg)
    fq = base_level(fam)
    level = t.level
    if not level.is_over(fq) or level.degree != fam.f_deg * s:
        msg = f"point must live on F_q^{s} built over F_q, got {level!r}"
        raise ValueError(msg)
    level.ensure_tables(max_table_size)

    p, order = fam.p, fam.m
    conductor = p * order
    group = level.size - 1
    traces = level.trace_by_log()
    chi = [character_exponent(level, j, order, over=fq) for j in fam.chi_indices]
    rho = [character_exponent(level, j, order, over=fq) for j in fam.rho_indices]
    shift = level.log(t.code)
    free = fam.a - 1 + fam.b
    logger.debug(
        "hypergeometric sum over %d^%d tuples at level %r", group, free, level
    )

    counts = [0] * conductor
    for logs in itertools.product(range(group), repeat=free):
        xs, ys = logs[: fam.a - 1], logs[fam.a - 1 :]
        last = (shift + sum(ys) - sum(xs)) % group
        tr = traces[last] + sum(traces[u] for u in xs) - sum(traces[v] for v in ys)
        ch = (
            chi[-1] * last
            + sum(c * u for c, u in zip(chi, xs, strict=False))
            - sum(d * v for d, v in zip(rho, ys, strict=True))
        )
        counts[(order * tr + p * ch) % conductor] += 1

    numerator = CycNum.from_exponent_counts(conductor, counts)
    if free % 2:
        numerator = -numerator
    return NormalizedTrace(
        numerator=numerator,
        gauss_exponent=fam.f_deg * s * free,
        gauss_p=p,
    )


# ==============================================================================
# Tables and dispatch
# ==============================================================================


def trace_table(fam: TableFamily, m: int, point_id: str) -> NormalizedTrace:
    """The stored trace; raises :class:`IncompleteTableError` when absent."""
    return fam.lookup(m, point_id)


def family_trace(
    fam: Family,
    m: int,
    point: FFElem | str,
    k: int = 1,
    *,
    max_table_size: int = DEFAULT_MAX_TABLE_SIZE,
) -> NormalizedTrace:
    """``Phi(m * k, point)``: a degree-``m`` point's trace over ``F_{q**(mk)}``.

    ``point`` is an element of :func:`point_level` for the built-in families
    and a point id for tables.
    """
    if isinstance(fam, TableFamily):
        return trace_table(fam, m * k, str(point))
    if not isinstance(point, FFElem):
        msg = f"{fam.kind} families are evaluated at field elements"
        raise TypeError(msg)
    lifted = embed(point, build_extension(point.level, k)) if k > 1 else point
    if isinstance(fam, ArtinSchreierFamily):
        return trace_as(fam, m * k, lifted, max_table_size=max_table_size)
    return trace_hyp(fam, m * k, lifted, max_table_size=max_table_size)


def gauss_sum_over(
    level: FieldLevel, *, max_table_size: int = DEFAULT_MAX_TABLE_SIZE
) -> CycNum:
    """``G_m = sum_x psi(Tr(x**2))`` over ``level``; ``G_1`` is minus the Gauss sum."""
    level.ensure_tables(max_table_size)
    order = level.size - 1
    traces = level.trace_by_log()
    counts = [0] * level.p
    counts[0] += 1
    for i in range(order):
        counts[traces[2 * i % order]] += 1
    return CycNum.from_exponent_counts(level.p, counts)


def family_metadata(fam: Family) -> FamilyMetadata:
    """Rank, conductor, ramification and break data feeding the bounds."""
    if isinstance(fam, ArtinSchreierFamily):
        params = artin_schreier_params(fam.p, fam.n, fam.e_override)
    elif isinstance(fam, HypergeometricFamily):
        params = hypergeometric_params(fam.p, fam.f_deg, fam.m, fam.a, fam.b)
    else:
        return FamilyMetadata(
            rank=fam.rank,
            p=fam.gauss_p,
            q=fam.q,
            cond_e=fam.cond_e or fam.conductor,
            f_ram=fam.f_ram or 1,
            b1=fam.b1,
            e_breaks=fam.e_breaks,
            general=table_general_params(fam),
        )
    return FamilyMetadata(
        rank=params.r,
        p=params.p,
        q=params.q,
        cond_e=params.cond_e,
        f_ram=params.f_ram,
        b1=params.b1,
        e_breaks=Fraction(params.e_breaks),
    )
