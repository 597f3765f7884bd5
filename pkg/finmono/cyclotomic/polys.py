"""Dense polynomials over ``Q(zeta_c)``.

Characteristic polynomials of Frobenius have coefficients in the coefficient
field, so the eigenvalue tests run here: squarefree reduction by
``f / gcd(f, f')`` and divisibility into ``x**M - 1`` by computing
``x**M mod f`` with repeated squaring.
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from fractions import Fraction
from typing import Any

from finmono.cyclotomic.numbers import ConductorMismatchError, CycNum


class UndefinedGcdError(ZeroDivisionError):
    """Raised for ``gcd(0, 0)``."""


def _trim(coeffs: Sequence[CycNum]) -> tuple[CycNum, ...]:
    end = len(coeffs)
    while end and coeffs[end - 1].is_zero():
        end -= 1
    return tuple(coeffs[:end])


@dataclass(frozen=True)
class CycPoly:
    """Polynomial with ``CycNum`` coefficients, lowest degree first.

    The zero polynomial has no coefficients; otherwise the last coefficient is
    non-zero.
    """

    conductor: int
    coeffs: tuple[CycNum, ...]

    def __post_init__(self) -> None:
        for c in self.coeffs:
            if c.conductor != self.conductor:
                msg = (
                    f"coefficient conductor {c.conductor} differs from "
                    f"polynomial conductor {self.conductor}"
                )
                raise ConductorMismatchError(msg)
        object.__setattr__(self, "coeffs", _trim(self.coeffs))

    @classmethod
    def from_coeffs(cls, conductor: int, coeffs: Iterable[Any]) -> CycPoly:
        """Accept a mix of ``CycNum``, ``int`` and ``Fraction`` coefficients."""
        converted = [
            c if isinstance(c, CycNum) else CycNum.from_rational(conductor, c)
            for c in coeffs
        ]
        return cls(conductor, tuple(converted))

    @classmethod
    def constant(cls, value: CycNum) -> CycPoly:
        return cls(value.conductor, (value,))

    @classmethod
    def x(cls, conductor: int) -> CycPoly:
        return cls.from_coeffs(conductor, [0, 1])

    @classmethod
    def from_roots(cls, roots: Sequence[CycNum], conductor: int) -> CycPoly:
        """``prod (x - root)``, monic of degree ``len(roots)``."""
        result = cls.from_coeffs(conductor, [1])
        for root in roots:
            result = result * cls(conductor, (-root, CycNum.one(conductor)))
        return result

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def leading(self) -> CycNum:
        if not self.coeffs:
            msg = "zero polynomial has no leading coefficient"
            raise ValueError(msg)
        return self.coeffs[-1]

    def coefficient(self, k: int) -> CycNum:
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return CycNum.zero(self.conductor)

    def _check(self, other: CycPoly) -> None:
        if other.conductor != self.conductor:
            msg = f"conductor mismatch: {self.conductor} vs {other.conductor}"
            raise ConductorMismatchError(msg)

    def __add__(self, other: CycPoly) -> CycPoly:
        self._check(other)
        size = max(len(self.coeffs), len(other.coeffs))
        return CycPoly(
            self.conductor,
            tuple(self.coefficient(k) + other.coefficient(k) for k in range(size)),
        )

    def __neg__(self) -> CycPoly:
        return CycPoly(self.conductor, tuple(-c for c in self.coeffs))

    def __sub__(self, other: CycPoly) -> CycPoly:
        return self + (-other)

    def __mul__(self, other: CycPoly) -> CycPoly:
        self._check(other)
        if self.is_zero() or other.is_zero():
            return CycPoly(self.conductor, ())
        out = [CycNum.zero(self.conductor)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j, b in enumerate(other.coeffs):
                if not b.is_zero():
                    out[i + j] = out[i + j] + a * b
        return CycPoly(self.conductor, tuple(out))

    def scale(self, factor: CycNum | int | Fraction) -> CycPoly:
        return CycPoly(self.conductor, tuple(c * factor for c in self.coeffs))

    def monic(self) -> CycPoly:
        lead = self.leading()
        if lead == CycNum.one(self.conductor):
            return self
        return self.scale(lead.inverse())

    def divmod(self, divisor: CycPoly) -> tuple[CycPoly, CycPoly]:
        """Euclidean division; raises ``ZeroDivisionError`` for a zero divisor."""
        self._check(divisor)
        if divisor.is_zero():
            msg = "polynomial division by zero"
            raise ZeroDivisionError(msg)
        remainder = list(self.coeffs)
        dd = divisor.degree
        inv_lead = divisor.leading().inverse()
        quotient = [CycNum.zero(self.conductor)] * max(len(remainder) - dd, 0)
        for shift in range(len(remainder) - dd - 1, -1, -1):
            top = remainder[shift + dd]
            if top.is_zero():
                continue
            factor = top * inv_lead
            quotient[shift] = factor
            for k, d in enumerate(divisor.coeffs):
                if not d.is_zero():
                    remainder[shift + k] = remainder[shift + k] - factor * d
        return (
            CycPoly(self.conductor, tuple(quotient)),
            CycPoly(self.conductor, tuple(remainder[:dd] if dd else ())),
        )

    def __floordiv__(self, other: CycPoly) -> CycPoly:
        return self.divmod(other)[0]

    def __mod__(self, other: CycPoly) -> CycPoly:
        return self.divmod(other)[1]

    def derivative(self) -> CycPoly:
        return CycPoly(
            self.conductor, tuple(c * k for k, c in enumerate(self.coeffs) if k)
        )

    def evaluate(self, point: CycNum) -> CycNum:
        acc = CycNum.zero(self.conductor)
        for c in reversed(self.coeffs):
            acc = acc * point + c
        return acc

    def to_wire(self) -> list[dict[str, Any]]:
        return [c.to_wire() for c in self.coeffs]

    def __repr__(self) -> str:
        return f"CycPoly[{self.conductor}]({list(self.coeffs)!r})"


def poly_gcd(f: CycPoly, g: CycPoly) -> CycPoly:
    """Monic gcd by the Euclidean algorithm.

    Raises:
        UndefinedGcdError: If both inputs are zero.
    """
    if f.is_zero() and g.is_zero():
        msg = "gcd(0, 0) is undefined"
        raise UndefinedGcdError(msg)
    a, b = f, g
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def squarefree_part(f: CycPoly) -> CycPoly:
    """Monic polynomial with the roots of ``f``, each with multiplicity one."""
    g = poly_gcd(f, f.derivative())
    return (f // g).monic()


def _x_power_mod(exponent: int, modulus: CycPoly) -> CycPoly:
    result = CycPoly.from_coeffs(modulus.conductor, [1]) % modulus
    base = CycPoly.x(modulus.conductor) % modulus
    while exponent:
        if exponent & 1:
            result = (result * base) % modulus
        exponent >>= 1
        if exponent:
            base = (base * base) % modulus
    return result


def divides_unity_pow(f: CycPoly, order: int) -> bool:
    """True iff every root of ``f`` is a root of unity of order dividing ``order``.

    Equivalently the squarefree part of ``f`` divides ``x**order - 1``.
    """
    if order < 1:
        msg = f"order must be positive, got {order}"
        raise ValueError(msg)
    radical = squarefree_part(f)
    if radical.degree == 0:
        return True
    one = CycPoly.from_coeffs(f.conductor, [1])
    return _x_power_mod(order, radical) == one
