"""Additive and multiplicative characters with exact cyclotomic values."""

from __future__ import annotations

from finmono.cyclotomic import CycNum
from finmono.finitefield.tower import FFElem, FieldLevel


class CharacterOrderError(ValueError):
    """Raised when a character order does not divide the group order."""


def additive_char(x: FFElem) -> CycNum:
    """``psi(x) = zeta_p ** Tr(x)``."""
    level = x.level
    return CycNum.zeta(level.p, level.trace(x.code))


def character_exponent(
    level: FieldLevel, j: int, order: int, over: FieldLevel | None = None
) -> int:
    """Exponent ``c`` with ``chi(g**u) = zeta_order ** (c * u)`` on ``level``.

    ``chi`` is the character of ``over`` (default: ``level`` itself) sending
    the generator of ``over`` to ``zeta_order ** j``; on an extension it is
    composed with the norm, so ``c = j * log_over(N(g))``.

    Raises:
        CharacterOrderError: If ``order`` does not divide ``|over| - 1``.
    """
    over = level if over is None else over
    if order < 1 or (over.size - 1) % order:
        msg = (
            f"character order {order} does not divide the multiplicative group "
            f"order {over.size - 1}"
        )
        raise CharacterOrderError(msg)
    if over is level:
        return j % order
    norm_of_generator = level.norm_to(level.generator(), over)
    return j * over.log(norm_of_generator) % order


def mult_char(
    x: FFElem, j: int, order: int, over: FieldLevel | None = None
) -> CycNum:
    """``chi(x)`` for the character with ``chi(g) = zeta_order ** j``.

    ``x`` must be non-zero. With ``over`` given, ``chi`` is defined on that
    subfield level and evaluated on ``x`` through the norm.
    """
    if x.is_zero():
        msg = "multiplicative characters are not evaluated at 0"
        raise ValueError(msg)
    c = character_exponent(x.level, j, order, over)
    return CycNum.zeta(order, c * x.level.log(x.code))


def character_gauss_sum(level: FieldLevel, j: int, order: int) -> CycNum:
    """``sum_{x != 0} chi(x) psi(x)`` in ``Q(zeta_{p * order})``.

    ``order`` must be prime to ``p``, which holds whenever it divides
    ``|level| - 1``.
    """
    c = character_exponent(level, j, order)
    p = level.p
    conductor = p * order
    counts = [0] * conductor
    traces = level.trace_by_log()
    for u, tr in enumerate(traces):
        counts[(order * tr + p * (c * u % order)) % conductor] += 1
    return CycNum.from_exponent_counts(conductor, counts)
