"""Explicit finite-field towers ``F_p < F_{p^f} < F_{p^{fm}} < ...``.

Each :class:`FieldLevel` is a quotient ``base[x] / (h)`` with ``h`` the
lexicographically smallest monic irreducible of the requested degree over
its base, so a tower is a pure function of ``p`` and the chain of degrees and
is rebuilt identically in every worker process.

Elements are plain integer *codes*. A code's base-``p`` digits are its
coordinates in the tower basis; equivalently its base-``|base|`` digits are
the coordinates over the previous level. Two consequences drive the rest of
the package:

- an element of a level keeps its code in every extension built over it, so
  the canonical inclusion is the identity on codes;
- addition is digit-wise modulo ``p`` and never needs the modulus.

Multiplication uses exponential/logarithm tables once a level has built them
(:meth:`FieldLevel.ensure_tables`), and schoolbook polynomial arithmetic over
the base before that. Tables are capped by ``max_table_size``.
"""

from __future__ import annotations

import logging
from collections.abc import Iterator
from dataclasses import dataclass
from functools import lru_cache
from typing import Any

import sympy
from pydantic import BaseModel, ConfigDict, Field

from finmono.arith import ParameterError
from finmono.config import DEFAULT_MAX_TABLE_SIZE

logger = logging.getLogger(__name__)


class BudgetExceededError(RuntimeError):
    """Raised when a level is too large for its tables or enumeration."""


class UnrelatedLevelsError(ValueError):
    """Raised when an element is moved to a level not built over its own."""


def _add_codes(p: int, a: int, b: int) -> int:
    if p == 2:
        return a ^ b
    out, place = 0, 1
    while a or b:
        a, da = divmod(a, p)
        b, db = divmod(b, p)
        out += ((da + db) % p) * place
        place *= p
    return out


def _scale_codes(p: int, a: int, factor: int) -> int:
    """Multiply every digit by an ``F_p`` scalar."""
    factor %= p
    if factor == 1:
        return a
    out, place = 0, 1
    while a:
        a, da = divmod(a, p)
        out += (da * factor % p) * place
        place *= p
    return out


class FieldLevel:
    """One level of a tower: ``F_p`` itself or ``base[x] / (modulus)``."""

    def __init__(
        self,
        p: int,
        base: FieldLevel | None = None,
        modulus: tuple[int, ...] = (),
    ) -> None:
        self.p = p
        self.base = base
        self.modulus = modulus
        self.relative_degree = len(modulus) - 1 if base is not None else 1
        self.degree = base.degree * self.relative_degree if base is not None else 1
        self.size = p**self.degree
        self.base_size = base.size if base is not None else p
        self._extensions: dict[int, FieldLevel] = {}
        self._generator: int | None = None
        self._exp: list[int] | None = None
        self._log: list[int] | None = None
        self._trace: list[int] | None = None
        self._trace_by_log: list[int] | None = None
        self._basis_traces: list[int] | None = None

    def __repr__(self) -> str:
        return f"FieldLevel(p={self.p}, degree={self.degree})"

    @property
    def is_prime_field(self) -> bool:
        return self.base is None

    def chain(self) -> list[FieldLevel]:
        """Levels from the prime field up to this one."""
        levels: list[FieldLevel] = []
        level: FieldLevel | None = self
        while level is not None:
            levels.append(level)
            level = level.base
        return levels[::-1]

    def is_over(self, other: FieldLevel) -> bool:
        """True iff ``other`` is this level or one of its ancestors."""
        return any(level is other for level in self.chain())

    # ==========================================================================
    # Arithmetic on codes
    # ==========================================================================

    def add(self, a: int, b: int) -> int:
        return _add_codes(self.p, a, b)

    def neg(self, a: int) -> int:
        return _scale_codes(self.p, a, -1)

    def sub(self, a: int, b: int) -> int:
        return _add_codes(self.p, a, self.neg(b))

    def digits(self, a: int) -> list[int]:
        """Coordinates over the base, lowest first, length ``relative_degree``."""
        out = []
        for _ in range(self.relative_degree):
            a, d = divmod(a, self.base_size)
            out.append(d)
        return out

    def from_digits(self, digits: list[int]) -> int:
        code = 0
        for d in reversed(digits):
            code = code * self.base_size + d
        return code

    def mul(self, a: int, b: int) -> int:
        if not a or not b:
            return 0
        if self._log is not None and self._exp is not None:
            return self._exp[(self._log[a] + self._log[b]) % (self.size - 1)]
        if self.base is None:
            return a * b % self.p
        return self._mul_poly(a, b)

    def _mul_poly(self, a: int, b: int) -> int:
        base = self.base
        assert base is not None
        k = self.relative_degree
        da, db = self.digits(a), self.digits(b)
        prod = [0] * (2 * k - 1)
        for i, x in enumerate(da):
            if not x:
                continue
            for j, y in enumerate(db):
                if y:
                    prod[i + j] = base.add(prod[i + j], base.mul(x, y))
        for d in range(2 * k - 2, k - 1, -1):
            top = prod[d]
            if not top:
                continue
            for i in range(k):
                coeff = self.modulus[i]
                if coeff:
                    prod[d - k + i] = base.sub(prod[d - k + i], base.mul(top, coeff))
            prod[d] = 0
        return self.from_digits(prod[:k])

    def pow(self, a: int, exponent: int) -> int:
        if exponent < 0:
            return self.pow(self.inv(a), -exponent)
        if exponent == 0:
            return 1
        if not a:
            return 0
        if self._log is not None and self._exp is not None:
            return self._exp[self._log[a] * exponent % (self.size - 1)]
        result, square = 1, a
        while exponent:
            if exponent & 1:
                result = self.mul(result, square)
            exponent >>= 1
            if exponent:
                square = self.mul(square, square)
        return result

    def inv(self, a: int) -> int:
        if not a:
            msg = "zero has no inverse in a field"
            raise ZeroDivisionError(msg)
        return self.pow(a, self.size - 2)

    # ==========================================================================
    # Tables
    # ==========================================================================

    @property
    def has_tables(self) -> bool:
        return self._exp is not None

    def generator(self) -> int:
        """Smallest code whose multiplicative order is ``size - 1``."""
        if self._generator is None:
            order = self.size - 1
            primes = [int(q) for q in sympy.factorint(order)]
            for candidate in range(1, self.size):
                if all(self.pow(candidate, order // q) != 1 for q in primes):
                    self._generator = candidate
                    break
        assert self._generator is not None
        return self._generator

    def ensure_tables(self, max_table_size: int = DEFAULT_MAX_TABLE_SIZE) -> None:
        """Build the exp, log and trace tables of this level.

        Raises:
            BudgetExceededError: If the level has more than ``max_table_size``
                elements.
        """
        if self._exp is not None:
            return
        if self.size > max_table_size:
            msg = (
                f"level of size {self.size} exceeds the table budget "
                f"{max_table_size}"
            )
            raise BudgetExceededError(msg)
        if self.base is not None:
            self.base.ensure_tables(max_table_size)
        g = self.generator()
        exp = [1] * (self.size - 1)
        for i in range(1, self.size - 1):
            exp[i] = self.mul(exp[i - 1], g)
        log = [-1] * self.size
        for i, value in enumerate(exp):
            log[value] = i
        trace = [0]
        p = self.p
        for bt in self.basis_traces():
            trace = [(t + d * bt) % p for d in range(p) for t in trace]
        self._exp, self._log, self._trace = exp, log, trace
        self._trace_by_log = [trace[v] for v in exp]
        logger.debug("built tables for %r (generator %d)", self, g)

    def exp_table(self) -> list[int]:
        self.ensure_tables()
        assert self._exp is not None
        return self._exp

    def log_table(self) -> list[int]:
        self.ensure_tables()
        assert self._log is not None
        return self._log

    def trace_by_log(self) -> list[int]:
        """``Tr(g**i)`` indexed by ``i``."""
        self.ensure_tables()
        assert self._trace_by_log is not None
        return self._trace_by_log

    def log(self, a: int) -> int:
        if not a:
            msg = "discrete logarithm of zero"
            raise ZeroDivisionError(msg)
        return self.log_table()[a]

    # ==========================================================================
    # Traces and norms
    # ==========================================================================

    def relative_trace(self, a: int) -> int:
        """Trace down to the base: the trace of multiplication by ``a``."""
        if self.base is None:
            return a
        total = 0
        power = 1
        for i in range(self.relative_degree):
            total = self.base.add(total, self.digits(self.mul(a, power))[i])
            power *= self.base_size
        return total

    def basis_traces(self) -> list[int]:
        """Absolute traces of the basis codes ``p**d``, by transitivity."""
        if self._basis_traces is None:
            if self.base is None:
                self._basis_traces = [1]
            else:
                self._basis_traces = [
                    self.base.trace(self.relative_trace(self.p**d))
                    for d in range(self.degree)
                ]
        return self._basis_traces

    def trace(self, a: int) -> int:
        """Absolute trace to ``F_p``."""
        if self._trace is not None:
            return self._trace[a]
        if self.base is None:
            return a
        total = 0
        for bt in self.basis_traces():
            a, d = divmod(a, self.p)
            total += d * bt
        return total % self.p

    def frobenius_trace(self, a: int) -> int:
        """``sum_i a**(p**i)``, computed from the Galois conjugates."""
        total, conj = 0, a
        for _ in range(self.degree):
            total = self.add(total, conj)
            conj = self.pow(conj, self.p)
        return total

    def norm_to(self, a: int, over: FieldLevel) -> int:
        """Norm from this level to a level it was built over."""
        if not self.is_over(over):
            msg = f"{over!r} is not a subfield level of {self!r}"
            raise UnrelatedLevelsError(msg)
        if not a:
            return 0
        return self.pow(a, (self.size - 1) // (over.size - 1))

    # ==========================================================================
    # Description
    # ==========================================================================

    def describe(self) -> FieldTower:
        return FieldTower(
            p=self.p,
            chain=[
                TowerStep(degree=level.relative_degree, modulus=list(level.modulus))
                for level in self.chain()[1:]
            ],
        )


# ==============================================================================
# Polynomials over a level (irreducibility search)
# ==============================================================================


def _poly_trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mod(a: list[int], f: tuple[int, ...], base: FieldLevel) -> list[int]:
    """Remainder modulo a monic ``f``."""
    a = list(a)
    k = len(f) - 1
    for d in range(len(a) - 1, k - 1, -1):
        top = a[d]
        if not top:
            continue
        for i in range(k):
            if f[i]:
                a[d - k + i] = base.sub(a[d - k + i], base.mul(top, f[i]))
        a[d] = 0
    return _poly_trim(a[:k])


def _poly_mulmod(
    a: list[int], b: list[int], f: tuple[int, ...], base: FieldLevel
) -> list[int]:
    if not a or not b:
        return []
    prod = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if not x:
            continue
        for j, y in enumerate(b):
            if y:
                prod[i + j] = base.add(prod[i + j], base.mul(x, y))
    return _poly_mod(prod, f, base)


def _poly_powmod(
    a: list[int], exponent: int, f: tuple[int, ...], base: FieldLevel
) -> list[int]:
    result = [1]
    while exponent:
        if exponent & 1:
            result = _poly_mulmod(result, a, f, base)
        exponent >>= 1
        if exponent:
            a = _poly_mulmod(a, a, f, base)
    return result


def _poly_gcd_degree(a: list[int], b: list[int], base: FieldLevel) -> int:
    """Degree of ``gcd(a, b)`` (``-1`` only when both are zero)."""
    a, b = _poly_trim(list(a)), _poly_trim(list(b))
    while b:
        inv_lead = base.inv(b[-1])
        monic_b = tuple(base.mul(c, inv_lead) for c in b)
        a, b = b, _poly_mod(a, monic_b, base)
    return len(a) - 1


def is_irreducible(modulus: tuple[int, ...], base: FieldLevel) -> bool:
    """Rabin's test for a monic polynomial over ``base``."""
    k = len(modulus) - 1
    if k <= 1:
        return k == 1
    size = base.size
    x = [0, 1]
    frobenius_powers = [x]
    for _ in range(k):
        frobenius_powers.append(_poly_powmod(frobenius_powers[-1], size, modulus, base))
    if _poly_trim(list(frobenius_powers[k])) != x:
        return False
    for q in sympy.primefactors(k):
        h = frobenius_powers[k // q]
        diff = list(h) + [0] * max(0, 2 - len(h))
        diff[1] = base.sub(diff[1], 1)
        if _poly_gcd_degree(list(modulus), _poly_trim(diff), base) != 0:
            return False
    return True


def smallest_irreducible(base: FieldLevel, k: int) -> tuple[int, ...]:
    """Lexicographically smallest monic irreducible of degree ``k`` over ``base``.

    Candidates are ordered by their coefficient vector read from the highest
    non-leading coefficient down.
    """
    size = base.size
    for index in range(size**k):
        lower = []
        rest = index
        for _ in range(k):
            rest, d = divmod(rest, size)
            lower.append(d)
        if k > 1 and lower[0] == 0:
            continue
        candidate = (*lower, 1)
        if is_irreducible(candidate, base):
            return candidate
    msg = f"no irreducible polynomial of degree {k} over {base!r}"
    raise RuntimeError(msg)


# ==============================================================================
# Construction
# ==============================================================================


@lru_cache(maxsize=None)
def prime_field(p: int) -> FieldLevel:
    """The prime field ``F_p``, shared per process."""
    if not sympy.isprime(p):
        msg = f"characteristic must be prime, got {p}"
        raise ParameterError(msg)
    return FieldLevel(p)


def build_extension(level: FieldLevel, k: int) -> FieldLevel:
    """The degree-``k`` extension of ``level`` (``level`` itself for ``k = 1``)."""
    if k < 1:
        msg = f"extension degree must be >= 1, got {k}"
        raise ParameterError(msg)
    if k == 1:
        return level
    cached = level._extensions.get(k)
    if cached is not None:
        return cached
    if level.size <= DEFAULT_MAX_TABLE_SIZE:
        level.ensure_tables()
    modulus = smallest_irreducible(level, k)
    extension = FieldLevel(level.p, level, modulus)
    level._extensions[k] = extension
    logger.debug(
        "built extension of degree %d over %r with modulus %s", k, level, modulus
    )
    return extension


def field_of_degree(p: int, degree: int) -> FieldLevel:
    """``F_{p**degree}`` built directly over the prime field."""
    return build_extension(prime_field(p), degree)


# ==============================================================================
# Elements
# ==============================================================================


@dataclass(frozen=True)
class FFElem:
    """An element of a tower level, identified by its code."""

    level: FieldLevel
    code: int

    def __post_init__(self) -> None:
        if not 0 <= self.code < self.level.size:
            msg = f"code {self.code} outside a level of size {self.level.size}"
            raise ParameterError(msg)

    def _other(self, other: Any) -> int:
        if isinstance(other, FFElem):
            if other.level is not self.level:
                msg = "elements live on different levels; embed first"
                raise UnrelatedLevelsError(msg)
            return other.code
        return NotImplemented

    def __add__(self, other: FFElem) -> FFElem:
        return FFElem(self.level, self.level.add(self.code, self._other(other)))

    def __sub__(self, other: FFElem) -> FFElem:
        return FFElem(self.level, self.level.sub(self.code, self._other(other)))

    def __neg__(self) -> FFElem:
        return FFElem(self.level, self.level.neg(self.code))

    def __mul__(self, other: FFElem) -> FFElem:
        return FFElem(self.level, self.level.mul(self.code, self._other(other)))

    def __pow__(self, exponent: int) -> FFElem:
        return FFElem(self.level, self.level.pow(self.code, exponent))

    def inverse(self) -> FFElem:
        return FFElem(self.level, self.level.inv(self.code))

    def is_zero(self) -> bool:
        return self.code == 0

    def __repr__(self) -> str:
        return f"FFElem({self.code} in F_{self.level.p}^{self.level.degree})"


def enumerate_level(
    level: FieldLevel, max_size: int = DEFAULT_MAX_TABLE_SIZE
) -> Iterator[FFElem]:
    """Every element of ``level`` exactly once, in code order.

    Raises:
        BudgetExceededError: If the level has more than ``max_size`` elements.
    """
    if level.size > max_size:
        msg = f"enumerating {level.size} elements exceeds the budget {max_size}"
        raise BudgetExceededError(msg)
    for code in range(level.size):
        yield FFElem(level, code)


def embed(x: FFElem, target: FieldLevel) -> FFElem:
    """Canonical inclusion into a level built over ``x.level``."""
    if not target.is_over(x.level):
        msg = f"{target!r} was not built over {x.level!r}"
        raise UnrelatedLevelsError(msg)
    return FFElem(target, x.code)


def absolute_trace(x: FFElem) -> int:
    """``Tr_{F_{p^d}/F_p}(x)`` as an integer in ``[0, p)``."""
    return x.level.trace(x.code)


def norm_to(x: FFElem, over: FieldLevel) -> FFElem:
    return FFElem(over, x.level.norm_to(x.code, over))


def dlog_table(
    level: FieldLevel, max_table_size: int = DEFAULT_MAX_TABLE_SIZE
) -> dict[int, int]:
    """Map every non-zero code to its exponent base the level's generator."""
    level.ensure_tables(max_table_size)
    return {value: i for i, value in enumerate(level.exp_table())}


# ==============================================================================
# Report description
# ==============================================================================


class TowerStep(BaseModel):
    """One relative extension in a tower description."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    degree: int = Field(description="Degree over the previous level.")
    modulus: list[int] = Field(
        description="Monic defining polynomial, coefficients as previous-level "
        "codes, lowest degree first."
    )


class FieldTower(BaseModel):
    """Serializable description of a level: ``p`` and its chain of moduli."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    p: int
    chain: list[TowerStep] = Field(default_factory=list)

    @property
    def degree(self) -> int:
        total = 1
        for step in self.chain:
            total *= step.degree
        return total

    @property
    def size(self) -> int:
        return self.p**self.degree
