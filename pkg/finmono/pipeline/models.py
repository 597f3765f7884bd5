"""Budget, verdict and report models of a scan."""

from __future__ import annotations

from enum import Enum

from pydantic import BaseModel, ConfigDict, Field, model_validator

from finmono.bounds import BoundName, Criterion
from finmono.frobcheck import FrobData
from finmono.sheaftrace import SheafFamily
from finmono.wire import JsonInt

DEFAULT_MAX_DEGREE = 3
DEFAULT_MAX_FIELD_SIZE = 2**20
DEFAULT_MAX_POINTS = 10**6


class ScanBudget(BaseModel):
    """How far a scan may go before it gives up with ``Inconclusive``.

    ``worker_count`` changes how a scan runs, never what it finds, so it is
    left out of serialized reports.
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    max_degree: int = Field(default=DEFAULT_MAX_DEGREE, ge=0)
    max_field_size: JsonInt = Field(
        default=DEFAULT_MAX_FIELD_SIZE,
        ge=1,
        description="Largest field F_{q^(mk)} any trace may be evaluated over.",
    )
    max_points: JsonInt = Field(
        default=DEFAULT_MAX_POINTS,
        ge=1,
        description="Total points checked over all degrees.",
    )
    max_cost: JsonInt | None = Field(
        default=None, ge=1, description="Cap on the summed cost_estimate."
    )
    worker_count: int = Field(default=1, ge=1, exclude=True)


class VerdictKind(str, Enum):
    FINITE = "Finite"
    INFINITE = "Infinite"
    INCONCLUSIVE = "Inconclusive"


class BoundUsed(BaseModel):
    """The theorem bound a scan was measured against."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    theorem: str
    name: BoundName
    N: JsonInt | None = None
    N_magnitude: int | None = Field(
        default=None, description="Decimal digits of N when N is not materialized."
    )


class Witness(BaseModel):
    """A point at which a finiteness predicate fails."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    degree: int
    point: str
    point_index: int = Field(ge=0, description="Position in the degree's point order.")
    predicate: Criterion
    data: FrobData


class DegreeCoverage(BaseModel):
    """What was checked at one extension degree."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    m: int = Field(ge=1)
    points: JsonInt = Field(description="Points of X over F_{q^m}.")
    checked: JsonInt
    violations: int = 0
    cost: JsonInt = Field(description="cost_estimate for the degree.")

    @property
    def complete(self) -> bool:
        return self.checked == self.points


class Verdict(BaseModel):
    """``Finite``, ``Infinite`` with a witness, or ``Inconclusive``."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    kind: VerdictKind
    witness: Witness | None = None
    checked_up_to: int = Field(
        default=0, ge=0, description="Largest degree d with every degree <= d covered."
    )
    bound_used: BoundUsed | None = None
    notes: list[str] = Field(default_factory=list)

    @model_validator(mode="after")
    def _witness_iff_infinite(self) -> Verdict:
        if (self.kind is VerdictKind.INFINITE) != (self.witness is not None):
            msg = "a witness is present exactly when the verdict is Infinite"
            raise ValueError(msg)
        return self


class Timing(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")

    elapsed_seconds: float
    worker_count: int


class ScanReport(BaseModel):
    """The full record of a scan, written as JSON by the CLI."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    family: SheafFamily
    criterion: Criterion
    bound: BoundUsed | None = None
    budget: ScanBudget
    M: JsonInt | None = Field(
        default=None, description="Root-of-unity order used by the eigen check."
    )
    cost_formula: str
    degrees: list[DegreeCoverage] = Field(default_factory=list)
    verdict: Verdict
    point_results: list[FrobData] = Field(default_factory=list)
    timing: Timing | None = None

    @property
    def points_checked(self) -> int:
        return sum(d.checked for d in self.degrees)
