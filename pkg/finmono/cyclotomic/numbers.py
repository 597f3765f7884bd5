"""Exact elements of the cyclotomic field ``Q(zeta_c)``.

A :class:`CycNum` stores its rational coordinates in the power basis
``1, zeta, ..., zeta**(phi(c)-1)`` of ``Q[x]/Phi_c``. That basis generates the
full ring of integers ``Z[zeta_c]``, which is what makes the integrality tests
in this module a matter of reading denominators:

- ``a`` is integral at every place over ``p`` iff no coordinate denominator is
  divisible by ``p``.
- The quadratic Gauss sum ``G`` has valuation exactly ``1/2`` at every place
  over ``p`` (``G**2 = +-p``), so half-integral thresholds reduce to integral
  ones after one multiplication by ``G``.

Values are immutable. Operands must share a conductor; moving between
conductors ``c | c'`` is explicit through :meth:`CycNum.lift`.
"""

from __future__ import annotations

import logging
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Annotated, Any

import mpmath
import sympy
from pydantic import PlainSerializer, PlainValidator

from finmono.arith import (
    ParameterError,
    cyclotomic_poly,
    euler_phi,
    format_fraction,
    parse_fraction,
)

logger = logging.getLogger(__name__)


class ConductorMismatchError(ValueError):
    """Raised when two cyclotomic values live in different fields."""


class UnsupportedNormalizationError(ValueError):
    """Raised for ``p = 2``, where the quadratic Gauss sum vanishes."""


@lru_cache(maxsize=256)
def _power_table(conductor: int) -> tuple[tuple[int, ...], ...]:
    """Row ``e`` holds the power-basis coordinates of ``zeta**e``, ``0 <= e < c``."""
    phi = cyclotomic_poly(conductor)
    degree = len(phi) - 1
    row = [0] * degree
    row[0] = 1
    rows = [tuple(row)]
    for _ in range(conductor - 1):
        shifted = [0, *row]
        top = shifted[degree]
        if top:
            shifted = [s - top * c for s, c in zip(shifted, phi, strict=True)]
        row = shifted[:degree]
        rows.append(tuple(row))
    return tuple(rows)


def _reduce(conductor: int, dense: Sequence[Fraction | int]) -> tuple[Fraction, ...]:
    """Reduce a dense coefficient list (any length) to normal form."""
    degree = euler_phi(conductor)
    out = [Fraction(0)] * degree
    table = _power_table(conductor)
    for e, coeff in enumerate(dense):
        if not coeff:
            continue
        if e < degree:
            out[e] += coeff
            continue
        for j, t in enumerate(table[e % conductor]):
            if t:
                out[j] += coeff * t
    return tuple(out)


@dataclass(frozen=True)
class CycNum:
    """An element of ``Q(zeta_conductor)`` in normal form."""

    conductor: int
    coords: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if self.conductor < 1:
            msg = f"conductor must be >= 1, got {self.conductor}"
            raise ParameterError(msg)
        if len(self.coords) != euler_phi(self.conductor):
            msg = (
                f"expected {euler_phi(self.conductor)} coordinates for conductor "
                f"{self.conductor}, got {len(self.coords)}"
            )
            raise ParameterError(msg)

    # ==========================================================================
    # Constructors
    # ==========================================================================

    @classmethod
    def from_dense(cls, conductor: int, dense: Iterable[Fraction | int]) -> CycNum:
        """Build from coefficients of ``1, zeta, zeta**2, ...`` (any length)."""
        return cls(conductor, _reduce(conductor, list(dense)))

    @classmethod
    def from_rational(cls, conductor: int, value: Fraction | int) -> CycNum:
        coords = [Fraction(0)] * euler_phi(conductor)
        coords[0] = Fraction(value)
        return cls(conductor, tuple(coords))

    @classmethod
    def zero(cls, conductor: int) -> CycNum:
        return cls.from_rational(conductor, 0)

    @classmethod
    def one(cls, conductor: int) -> CycNum:
        return cls.from_rational(conductor, 1)

    @classmethod
    def zeta(cls, conductor: int, exponent: int = 1) -> CycNum:
        """``zeta_conductor ** exponent`` for any integer exponent."""
        row = _power_table(conductor)[exponent % conductor]
        return cls(conductor, tuple(Fraction(v) for v in row))

    @classmethod
    def from_exponent_counts(cls, conductor: int, counts: Sequence[int]) -> CycNum:
        """``sum(counts[e] * zeta**e)`` for an integer histogram of length ``c``.

        Character sums are accumulated as such histograms in their inner loop
        and converted once here.
        """
        if len(counts) != conductor:
            msg = f"need {conductor} exponent counts, got {len(counts)}"
            raise ParameterError(msg)
        table = _power_table(conductor)
        acc = [0] * euler_phi(conductor)
        for e, count in enumerate(counts):
            if count:
                for j, t in enumerate(table[e]):
                    if t:
                        acc[j] += count * t
        return cls(conductor, tuple(Fraction(v) for v in acc))

    # ==========================================================================
    # Field arithmetic
    # ==========================================================================

    def _coerce(self, other: Any) -> CycNum:
        if isinstance(other, CycNum):
            if other.conductor != self.conductor:
                msg = (
                    f"conductor mismatch: {self.conductor} vs {other.conductor}; "
                    "lift explicitly to a common conductor"
                )
                raise ConductorMismatchError(msg)
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return CycNum.from_rational(self.conductor, other)
        return NotImplemented

    def __add__(self, other: Any) -> CycNum:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        pairs = zip(self.coords, other.coords, strict=True)
        return CycNum(self.conductor, tuple(a + b for a, b in pairs))

    __radd__ = __add__

    def __neg__(self) -> CycNum:
        return CycNum(self.conductor, tuple(-a for a in self.coords))

    def __sub__(self, other: Any) -> CycNum:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        pairs = zip(self.coords, other.coords, strict=True)
        return CycNum(self.conductor, tuple(a - b for a, b in pairs))

    def __rsub__(self, other: Any) -> CycNum:
        return (-self) + other

    def __mul__(self, other: Any) -> CycNum:
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return CycNum(self.conductor, tuple(a * other for a in self.coords))
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        left = [(i, a) for i, a in enumerate(self.coords) if a]
        right = [(j, b) for j, b in enumerate(other.coords) if b]
        dense = [Fraction(0)] * (2 * len(self.coords) - 1)
        for i, a in left:
            for j, b in right:
                dense[i + j] += a * b
        return CycNum(self.conductor, _reduce(self.conductor, dense))

    __rmul__ = __mul__

    def inverse(self) -> CycNum:
        """Multiplicative inverse, via the extended Euclidean algorithm mod ``Phi_c``.

        Raises:
            ZeroDivisionError: If the value is zero.
        """
        if self.is_zero():
            msg = f"division by zero in Q(zeta_{self.conductor})"
            raise ZeroDivisionError(msg)
        if self.is_rational():
            return CycNum.from_rational(self.conductor, 1 / self.coords[0])
        x = sympy.Symbol("x")
        modulus = sympy.Poly(list(reversed(cyclotomic_poly(self.conductor))), x)
        value = sympy.Poly(
            [sympy.Rational(c.numerator, c.denominator) for c in reversed(self.coords)],
            x,
            domain=sympy.QQ,
        )
        inv = value.invert(modulus.set_domain(sympy.QQ))
        coeffs = [sympy.Rational(c) for c in reversed(inv.all_coeffs())]
        return CycNum.from_dense(
            self.conductor, [Fraction(int(c.p), int(c.q)) for c in coeffs]
        )

    def __truediv__(self, other: Any) -> CycNum:
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            if other == 0:
                msg = "division by zero"
                raise ZeroDivisionError(msg)
            return CycNum(self.conductor, tuple(a / other for a in self.coords))
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other: Any) -> CycNum:
        return CycNum.from_rational(self.conductor, other) / self

    def __pow__(self, exponent: int) -> CycNum:
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = CycNum.one(self.conductor)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            exponent >>= 1
            if exponent:
                base = base * base
        return result

    # ==========================================================================
    # Structure
    # ==========================================================================

    def is_zero(self) -> bool:
        return not any(self.coords)

    def is_rational(self) -> bool:
        return not any(self.coords[1:])

    def lift(self, conductor: int) -> CycNum:
        """Image under ``zeta_c -> zeta_{c'}**(c'/c)`` for ``c | c'``."""
        if conductor == self.conductor:
            return self
        if conductor % self.conductor:
            msg = f"cannot lift conductor {self.conductor} to {conductor}"
            raise ConductorMismatchError(msg)
        step = conductor // self.conductor
        dense = [Fraction(0)] * conductor
        for i, a in enumerate(self.coords):
            dense[(i * step) % conductor] += a
        return CycNum.from_dense(conductor, dense)

    def galois(self, j: int) -> CycNum:
        """Apply the automorphism ``zeta -> zeta**j`` (``gcd(j, c) = 1``)."""
        if gcd(j, self.conductor) != 1:
            msg = f"{j} is not a unit modulo {self.conductor}"
            raise ParameterError(msg)
        dense = [Fraction(0)] * self.conductor
        for i, a in enumerate(self.coords):
            dense[(i * j) % self.conductor] += a
        return CycNum.from_dense(self.conductor, dense)

    def conjugate(self) -> CycNum:
        """Complex conjugation, ``zeta -> zeta**-1``."""
        if self.conductor <= 2:
            return self
        return self.galois(self.conductor - 1)

    def common_denominator(self) -> int:
        den = 1
        for c in self.coords:
            den = den * c.denominator // gcd(den, c.denominator)
        return den

    # ==========================================================================
    # Wire form
    # ==========================================================================

    def to_wire(self) -> dict[str, Any]:
        return {
            "conductor": self.conductor,
            "coords": [format_fraction(c) for c in self.coords],
        }

    @classmethod
    def from_wire(cls, data: dict[str, Any]) -> CycNum:
        try:
            conductor = int(data["conductor"])
            coords = tuple(parse_fraction(c) for c in data["coords"])
        except (KeyError, TypeError) as exc:
            msg = "cyclotomic value needs 'conductor' and 'coords'"
            raise ParameterError(msg) from exc
        return cls(conductor, coords)

    def __repr__(self) -> str:
        terms = []
        for i, c in enumerate(self.coords):
            if c:
                terms.append(f"{c}" if i == 0 else f"({c})*z^{i}")
        body = " + ".join(terms) or "0"
        return f"CycNum[{self.conductor}]({body})"


def _validate_cycnum(value: Any) -> CycNum:
    if isinstance(value, CycNum):
        return value
    if isinstance(value, dict):
        return CycNum.from_wire(value)
    msg = f"cannot interpret {type(value).__name__} as a cyclotomic value"
    raise ValueError(msg)


# Pydantic field type: validates wire dicts, serializes back to them in JSON.
CycNumField = Annotated[
    CycNum,
    PlainValidator(_validate_cycnum),
    PlainSerializer(lambda v: v.to_wire(), return_type=dict, when_used="json"),
]


# ==============================================================================
# Integrality and Gauss sums
# ==============================================================================


def p_integral_everywhere(a: CycNum, p: int) -> bool:
    """True iff ``a`` is integral at every place of ``Q(zeta_c)`` over ``p``."""
    return all(c.denominator % p for c in a.coords)


@lru_cache(maxsize=64)
def quadratic_gauss_sum(p: int) -> CycNum:
    """``G = -sum_{x in F_p} zeta_p**(x**2)``, with ``G**2 = (-1)**((p-1)/2) * p``.

    Raises:
        UnsupportedNormalizationError: For ``p = 2``, where the sum is 0.
        ParameterError: If ``p`` is not prime.
    """
    if p == 2:
        msg = "the quadratic Gauss sum vanishes for p = 2; no weight-0 normalization"
        raise UnsupportedNormalizationError(msg)
    if not sympy.isprime(p):
        msg = f"Gauss sum needs an odd prime, got {p}"
        raise ParameterError(msg)
    counts = [0] * p
    for x in range(p):
        counts[x * x % p] += 1
    return -CycNum.from_exponent_counts(p, counts)


def gauss_square_sign(p: int) -> int:
    """The sign ``(-1)**((p-1)/2)`` in ``G**2 = sign * p``."""
    return 1 if p % 4 == 1 else -1


def check_valuation_ge(a: CycNum, p: int, half_units: int) -> bool:
    """Decide ``v(a) >= half_units / 2`` at every place over ``p``.

    Valuations are normalized by ``v(p) = 1``. Equivalently: is ``a / G**k``
    integral at every place over ``p``?

    Raises:
        ConductorMismatchError: If ``half_units`` is odd and ``p`` does not
            divide the conductor (``G`` would not live in the field of ``a``).
    """
    if half_units < 0:
        msg = f"half_units must be non-negative, got {half_units}"
        raise ParameterError(msg)
    if half_units % 2 == 0:
        return p_integral_everywhere(a / Fraction(p) ** (half_units // 2), p)
    if a.conductor % p:
        msg = (
            f"odd threshold needs p={p} to divide the conductor {a.conductor} "
            "so the Gauss sum lives in the same field"
        )
        raise ConductorMismatchError(msg)
    g = quadratic_gauss_sum(p).lift(a.conductor)
    return p_integral_everywhere(a * g / Fraction(p) ** ((half_units + 1) // 2), p)


def complex_embeddings(a: CycNum, digits: int = 20) -> list[mpmath.mpc]:
    """Numeric images of ``a`` under every ``zeta_c -> exp(2 pi i j / c)``.

    One value per ``j`` coprime to ``c``, in increasing ``j``. The working
    precision carries guard digits for the coordinate sizes, so each value is
    within ``10**-digits`` of the exact embedding.
    """
    c = a.conductor
    magnitude = max(
        (len(str(abs(x.numerator))) + len(str(x.denominator)) for x in a.coords),
        default=1,
    )
    values: list[mpmath.mpc] = []
    with mpmath.workdps(digits + magnitude + 10):
        for j in range(1, c + 1):
            if gcd(j, c) != 1:
                continue
            total = mpmath.mpc(0)
            for i, coeff in enumerate(a.coords):
                if coeff:
                    root = mpmath.expjpi(mpmath.mpf(2 * ((i * j) % c)) / c)
                    total += mpmath.mpf(coeff.numerator) / coeff.denominator * root
            values.append(+total)
    return values
