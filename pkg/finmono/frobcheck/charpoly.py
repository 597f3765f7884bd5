"""Characteristic polynomials of Frobenius and the two finiteness predicates.

The eigenvalue power sums at a degree-``m`` point are the traces at the same
point over ``F_{q**(mk)}``, ``k = 1..rank``. Newton's identities turn them
into the characteristic polynomial, and the predicates are decided exactly:

- *trace integral*: ``numerator / G**k`` is an algebraic integer;
- *eigen unity*: the squarefree part of the polynomial divides ``x**M - 1``.
"""

from __future__ import annotations

import logging
import math
from collections.abc import Sequence
from fractions import Fraction

from pydantic import BaseModel, ConfigDict, Field

from finmono.config import DEFAULT_MAX_TABLE_SIZE
from finmono.cyclotomic import (
    ConductorMismatchError,
    CycNum,
    CycNumField,
    CycPoly,
    UnsupportedNormalizationError,
    check_valuation_ge,
    divides_unity_pow,
)
from finmono.finitefield import FFElem
from finmono.sheaftrace import Family, NormalizedTrace, family_metadata, family_trace

logger = logging.getLogger(__name__)


def newton_char_poly(
    power_sums: Sequence[CycNum], conductor: int | None = None
) -> CycPoly:
    """Monic polynomial whose roots have the given first ``r`` power sums.

    ``k e_k = sum_{i=1..k} (-1)**(i-1) e_{k-i} p_i``; the result is
    ``sum_k (-1)**k e_k x**(r-k)``. Power sums of different conductors are
    lifted to a common one.
    """
    if conductor is None:
        if not power_sums:
            msg = "need a conductor for an empty list of power sums"
            raise ValueError(msg)
        conductor = math.lcm(*(s.conductor for s in power_sums))
    sums = [s.lift(conductor) for s in power_sums]
    r = len(sums)
    elementary = [CycNum.one(conductor)]
    for k in range(1, r + 1):
        acc = CycNum.zero(conductor)
        for i in range(1, k + 1):
            term = elementary[k - i] * sums[i - 1]
            acc = acc + term if i % 2 else acc - term
        elementary.append(acc * Fraction(1, k))
    coeffs = [CycNum.zero(conductor)] * (r + 1)
    for k, e_k in enumerate(elementary):
        coeffs[r - k] = e_k if k % 2 == 0 else -e_k
    return CycPoly(conductor, tuple(coeffs))


def _integral_coords(value: CycNum) -> bool:
    return all(c.denominator == 1 for c in value.coords)


def check_eigen_unity(f: CycPoly, m_order: int) -> bool:
    """True iff ``f`` is integral and all its roots are ``M``-th roots of unity."""
    if not all(_integral_coords(c) for c in f.coeffs):
        return False
    return divides_unity_pow(f, m_order)


def check_trace_integral(tr: NormalizedTrace, p: int | None = None) -> bool:
    """True iff ``tr.numerator / G**k`` is an algebraic integer.

    Away from ``p`` the Gauss sum is a unit, so the numerator may only have
    ``p``-power denominators; at ``p`` its valuation must reach ``k / 2``.
    """
    p = tr.gauss_p if p is None else p
    for c in tr.numerator.coords:
        den = c.denominator
        while den % p == 0:
            den //= p
        if den != 1:
            return False
    k = tr.gauss_exponent
    if k == 0:
        return all(c.denominator == 1 for c in tr.numerator.coords)
    if k % 2 and tr.numerator.conductor % p:
        # p is unramified in the numerator's field: valuations there are
        # integers, so v >= k/2 is the same as v >= (k+1)/2.
        return check_valuation_ge(tr.numerator, p, k + 1)
    return check_valuation_ge(tr.numerator, p, k)


class FrobData(BaseModel):
    """Everything decided at one point ``(m, point)``."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    degree: int = Field(ge=1, description="Extension degree m of the point.")
    point: str
    power_sums: list[NormalizedTrace] = Field(
        description="Traces over F_{q^(mk)}, k = 1..r (only k = 1 for the trace check)."
    )
    char_poly: list[CycNumField] | None = Field(
        default=None, description="Coefficients, lowest degree first."
    )
    trace_integral: bool
    eigen_unity: bool | None = None
    failure: str | None = None

    def poly(self) -> CycPoly | None:
        if self.char_poly is None:
            return None
        return CycPoly(self.char_poly[0].conductor, tuple(self.char_poly))


def point_id(point: FFElem | str) -> str:
    return point if isinstance(point, str) else str(point.code)


def trace_data(
    fam: Family,
    m: int,
    point: FFElem | str,
    *,
    max_table_size: int = DEFAULT_MAX_TABLE_SIZE,
) -> FrobData:
    """Only the trace-integrality predicate, from the single trace at degree ``m``."""
    tr = family_trace(fam, m, point, max_table_size=max_table_size)
    integral = check_trace_integral(tr)
    return FrobData(
        degree=m,
        point=point_id(point),
        power_sums=[tr],
        trace_integral=integral,
        failure=None if integral else "trace is not an algebraic integer",
    )


def frobenius_char_poly(
    fam: Family,
    m: int,
    point: FFElem | str,
    m_order: int,
    *,
    max_table_size: int = DEFAULT_MAX_TABLE_SIZE,
) -> FrobData:
    """Power sums, characteristic polynomial and both predicates at a point.

    A non-integral normalization is recorded as ``trace_integral = False``;
    the polynomial is still assembled from the exact quotients. A quotient
    that cannot be formed at all (a table whose conductor cannot hold the
    Gauss sum) is reported in ``failure`` with ``eigen_unity = False``.
    """
    rank = family_metadata(fam).rank
    traces = [
        family_trace(fam, m, point, k, max_table_size=max_table_size)
        for k in range(1, rank + 1)
    ]
    integral = check_trace_integral(traces[0])
    try:
        values = [tr.value() for tr in traces]
    except (ConductorMismatchError, UnsupportedNormalizationError) as exc:
        logger.info("cannot normalize traces at (%d, %s): %s", m, point_id(point), exc)
        return FrobData(
            degree=m,
            point=point_id(point),
            power_sums=traces,
            trace_integral=integral,
            eigen_unity=False,
            failure=str(exc),
        )
    poly = newton_char_poly(values)
    unity = check_eigen_unity(poly, m_order)
    failure = None
    if not unity:
        failure = f"eigenvalues are not all roots of unity of order dividing {m_order}"
    elif not integral:
        failure = "trace is not an algebraic integer"
    return FrobData(
        degree=m,
        point=point_id(point),
        power_sums=traces,
        char_poly=list(poly.coeffs),
        trace_integral=integral,
        eigen_unity=unity,
        failure=failure,
    )
