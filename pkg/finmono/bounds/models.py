"""Parameter and report models for the effective bounds.

Bound inputs come in two shapes: :class:`GeneralParams` for a sheaf on a
projective variety with a complexity bound, and :class:`CurveParams` for a
sheaf on a curve with known first Betti number and break sum. Every bound is
reported in a :class:`BoundReport` together with the intermediate ``M``,
``R`` and ``A_n`` so it can be re-derived by hand.
"""

from __future__ import annotations

from enum import Enum
from typing import Any

import sympy
from pydantic import BaseModel, ConfigDict, Field, model_validator

from finmono.arith import euler_phi
from finmono.wire import JsonInt, Rational


class Criterion(str, Enum):
    """Which finiteness criterion a bound serves."""

    EIGEN = "eigen"  # Frobenius eigenvalues are roots of unity
    TRACE = "trace"  # Frobenius traces are integral over p
    TRACES = "traces"  # traces agree with those of a finite-monodromy model


class BoundName(str, Enum):
    """Names of the individual bounds in a report."""

    TRACE_IDENTITY_CURVE = "trace_identity_curve"
    TRACE_IDENTITY_GENERAL = "trace_identity_general"
    EIGEN_CURVE = "eigen_curve"
    EIGEN_GENERAL = "eigen_general"
    TRACE_INTEGRALITY_CURVE = "trace_integrality_curve"
    TRACE_INTEGRALITY_GENERAL = "trace_integrality_general"
    EIGEN_CURVE_SIMPLIFIED = "eigen_curve_simplified"
    TRACE_INTEGRALITY_CURVE_SIMPLIFIED = "trace_integrality_curve_simplified"


def _smallest_prime_factor(q: int) -> int:
    return int(min(sympy.primefactors(q)))


def _check_prime_power(q: int, p: int) -> None:
    if not sympy.isprime(p):
        msg = f"p must be prime, got {p}"
        raise ValueError(msg)
    rest = q
    while rest % p == 0:
        rest //= p
    if rest != 1:
        msg = f"q={q} is not a power of p={p}"
        raise ValueError(msg)


class _FieldParams(BaseModel):
    """Fields shared by both parameter shapes."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    r: int = Field(ge=1, description="Rank of the sheaf.")
    q: int = Field(ge=2, description="Size of the base finite field.")
    p: int = Field(ge=2, description="Characteristic; q is a power of p.")
    cond_e: int = Field(
        default=1,
        ge=1,
        description="Conductor c of the cyclotomic coefficient field Q(zeta_c).",
    )
    f_ram: int = Field(
        default=1,
        ge=1,
        description="Largest ramification index of a prime of E over p.",
    )

    @model_validator(mode="before")
    @classmethod
    def _default_characteristic(cls, data: Any) -> Any:
        if isinstance(data, dict) and data.get("p") is None and data.get("q"):
            data = {**data, "p": _smallest_prime_factor(int(data["q"]))}
        return data

    @model_validator(mode="after")
    def _q_is_power_of_p(self) -> _FieldParams:
        _check_prime_power(self.q, self.p)
        return self


class CurveParams(_FieldParams):
    """Inputs for the bounds on a curve."""

    b1: int = Field(ge=0, description="First Betti number with compact supports.")
    e_breaks: Rational = Field(description="Upper bound for the sum of breaks.")

    @model_validator(mode="after")
    def _positive_breaks(self) -> CurveParams:
        if self.e_breaks <= 0:
            msg = f"e_breaks must be positive, got {self.e_breaks}"
            raise ValueError(msg)
        return self


class GeneralParams(_FieldParams):
    """Inputs for the bounds on a projective variety of bounded complexity."""

    ambient_n: int = Field(ge=0, description="Dimension of the projective space.")
    complexity: int = Field(ge=1, description="Complexity bound C of the sheaf.")
    c_x: int = Field(ge=1, description="Complexity of the structure sheaf of X.")
    d_ext: int | None = Field(
        default=None,
        description="Degree bound d = [E:Q]; defaults to phi(cond_e).",
    )

    @model_validator(mode="before")
    @classmethod
    def _fill_degree(cls, data: Any) -> Any:
        if isinstance(data, dict) and data.get("d_ext") is None:
            data = {**data, "d_ext": euler_phi(int(data.get("cond_e") or 1))}
        return data


class EigenBound(BaseModel):
    """One evaluated bound with its intermediates.

    ``N`` is ``None`` exactly when the argument of the logarithm was too large
    to materialize; ``N_magnitude`` then carries the number of decimal digits
    of ``N``, read off a high-precision logarithm of that argument.
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    M: JsonInt | None = None
    R: JsonInt | None = None
    N: JsonInt | None = None
    N_magnitude: int | None = None
    multiplier: JsonInt = 1


class BoundEntry(BaseModel):
    """A named bound inside a report."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    name: BoundName
    criterion: Criterion
    N: JsonInt | None = None
    N_magnitude: int | None = None
    multiplier: JsonInt = 1


class MReading(BaseModel):
    """``M`` evaluated under one reading of a closed form, with its bound."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    reading: str
    M: JsonInt
    R: JsonInt
    N: JsonInt
    matches_lcm: bool


class BoundReport(BaseModel):
    """All bounds for one parameter set, keyed by name."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    theorem: str = Field(description="Family or parameter shape the report is for.")
    criterion: Criterion
    inputs: CurveParams | GeneralParams
    M: JsonInt
    R: JsonInt
    A_n: Rational | None = None
    N: JsonInt | None = Field(
        default=None, description="The bound for the requested criterion."
    )
    N_magnitude: int | None = None
    m_closed_form: JsonInt | None = None
    bounds: list[BoundEntry] = Field(default_factory=list)
    m_readings: list[MReading] = Field(default_factory=list)
    annotations: list[str] = Field(default_factory=list)

    @model_validator(mode="after")
    def _bounds_cover_rank(self) -> BoundReport:
        floor = 2 * self.inputs.r
        for entry in self.bounds:
            if entry.N is not None and entry.N < floor:
                msg = f"{entry.name.value} = {entry.N} is below 2r = {floor}"
                raise ValueError(msg)
        return self

    def entry(self, name: BoundName) -> BoundEntry:
        for bound in self.bounds:
            if bound.name == name:
                return bound
        msg = f"report has no bound named {name.value}"
        raise KeyError(msg)
