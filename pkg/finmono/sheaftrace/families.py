"""Descriptors of the sheaf families the engines know how to evaluate.

A family is a pydantic model tagged by ``kind``:

- ``artin_schreier``: the Fourier transform of the pull-back of the
  Artin-Schreier sheaf by ``x -> x**n``, on the affine line over ``F_p``;
- ``hypergeometric``: the normalized hypergeometric sheaf on ``G_m`` over
  ``F_q``, ``q = p**f_deg``, attached to ``a`` characters ``chi`` and ``b``
  characters ``rho`` of order dividing ``m``;
- ``table``: a user-supplied table of normalized traces.

Descriptors accept parameter combinations that only the bounds can handle
(for instance ``p = 2``); the engines raise when asked to evaluate them.
"""

from __future__ import annotations

from typing import Annotated, Any, Literal

import sympy
from pydantic import BaseModel, ConfigDict, Field, PrivateAttr, model_validator

from finmono.arith import euler_phi
from finmono.bounds import CurveParams, GeneralParams
from finmono.sheaftrace.values import NormalizedTrace
from finmono.wire import Rational


class IncompleteTableError(LookupError):
    """Raised when a trace table has no entry for a requested point."""

    def __init__(self, degree: int, point_id: str) -> None:
        self.degree = degree
        self.point_id = point_id
        msg = f"trace table has no entry for degree {degree}, point {point_id}"
        super().__init__(msg)


def _check_prime(p: int) -> int:
    if not sympy.isprime(p):
        msg = f"p must be prime, got {p}"
        raise ValueError(msg)
    return p


class ArtinSchreierFamily(BaseModel):
    """``t -> sum_x psi(Tr(x**n + t x))``, normalized by ``-1 / G**m``; rank n - 1."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    kind: Literal["artin_schreier"] = "artin_schreier"
    p: int
    n: int = Field(ge=2)
    e_override: Rational | None = Field(
        default=None, description="Replaces the break sum 1/(n-1) in the bounds."
    )

    @model_validator(mode="after")
    def _prime(self) -> ArtinSchreierFamily:
        _check_prime(self.p)
        return self

    @property
    def rank(self) -> int:
        return self.n - 1

    @property
    def q(self) -> int:
        return self.p


class HypergeometricFamily(BaseModel):
    """Katz's hypergeometric sheaf with disjoint character lists.

    Characters are indexed by ``j`` modulo ``m``: index ``j`` is the character
    of ``F_q^x`` sending the level's generator to ``zeta_m**j``. Without
    explicit indices the family uses ``chi = 1..a`` and the next ``b``
    indices for ``rho``, which are disjoint whenever ``a + b <= m``.
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    kind: Literal["hypergeometric"] = "hypergeometric"
    p: int
    f_deg: int = Field(default=1, ge=1)
    m: int = Field(ge=1, description="Common order of the characters.")
    a: int = Field(ge=1)
    b: int = Field(ge=0)
    chi_indices: list[int] = Field(default_factory=list)
    rho_indices: list[int] = Field(default_factory=list)

    @model_validator(mode="before")
    @classmethod
    def _default_indices(cls, data: Any) -> Any:
        if not isinstance(data, dict):
            return data
        a, b, m = data.get("a"), data.get("b"), data.get("m")
        if a is None or b is None or m is None:
            return data
        data = dict(data)
        if not data.get("chi_indices"):
            data["chi_indices"] = [j % int(m) for j in range(1, int(a) + 1)]
        if not data.get("rho_indices") and int(b):
            start = int(a) + 1
            data["rho_indices"] = [j % int(m) for j in range(start, start + int(b))]
        return data

    @model_validator(mode="after")
    def _consistent(self) -> HypergeometricFamily:
        _check_prime(self.p)
        if self.a <= self.b:
            msg = f"hypergeometric family needs a > b, got a={self.a} b={self.b}"
            raise ValueError(msg)
        if len(self.chi_indices) != self.a or len(self.rho_indices) != self.b:
            msg = "need exactly a chi indices and b rho indices"
            raise ValueError(msg)
        chis = {j % self.m for j in self.chi_indices}
        rhos = {j % self.m for j in self.rho_indices}
        if chis & rhos:
            shared = sorted(chis & rhos)
            msg = f"chi and rho character lists must be disjoint, share {shared}"
            raise ValueError(msg)
        if self.m % self.p == 0:
            msg = f"character order m={self.m} must be prime to p={self.p}"
            raise ValueError(msg)
        return self

    @property
    def rank(self) -> int:
        return self.a

    @property
    def q(self) -> int:
        return self.p**self.f_deg


class TableEntry(BaseModel):
    """One stored trace: ``Phi(degree, point_id)``."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    degree: int = Field(ge=1)
    point_id: str = Field(min_length=1, pattern=r"^\S+$")
    trace: NormalizedTrace


class TableFamily(BaseModel):
    """Traces computed elsewhere, with user-declared bound metadata.

    The same ``point_id`` at degree ``m * k`` is read as the point of degree
    ``m`` viewed over the degree-``k`` extension, which is what supplies the
    power sums for characteristic polynomials.
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    kind: Literal["table"] = "table"
    conductor: int = Field(ge=1)
    gauss_p: int
    rank: int = Field(default=1, ge=1)
    q: int | None = None
    b1: int | None = None
    e_breaks: Rational | None = None
    cond_e: int | None = None
    f_ram: int | None = None
    ambient_n: int | None = None
    complexity: int | None = None
    c_x: int | None = None
    d_ext: int | None = None
    entries: list[TableEntry] = Field(default_factory=list)

    _index: dict[tuple[int, str], NormalizedTrace] = PrivateAttr(default_factory=dict)

    @model_validator(mode="after")
    def _consistent(self) -> TableFamily:
        _check_prime(self.gauss_p)
        index: dict[tuple[int, str], NormalizedTrace] = {}
        for entry in self.entries:
            key = (entry.degree, entry.point_id)
            if key in index:
                msg = f"duplicate table entry for degree {key[0]}, point {key[1]}"
                raise ValueError(msg)
            if entry.trace.numerator.conductor != self.conductor:
                msg = (
                    f"entry {key} has conductor {entry.trace.numerator.conductor}, "
                    f"table declares {self.conductor}"
                )
                raise ValueError(msg)
            if entry.trace.gauss_p != self.gauss_p:
                msg = f"entry {key} normalizes by p={entry.trace.gauss_p}"
                raise ValueError(msg)
            if self.gauss_p == 2 and entry.trace.gauss_exponent:
                msg = f"entry {key}: p = 2 admits only gauss exponent 0"
                raise ValueError(msg)
            index[key] = entry.trace
        self._index = index
        return self

    @property
    def p(self) -> int:
        return self.gauss_p

    def lookup(self, degree: int, point_id: str) -> NormalizedTrace:
        try:
            return self._index[(degree, point_id)]
        except KeyError:
            raise IncompleteTableError(degree, point_id) from None

    def degrees(self) -> list[int]:
        return sorted({entry.degree for entry in self.entries})

    def points_at(self, degree: int) -> list[str]:
        """Point ids stored at ``degree``, in table order."""
        return [entry.point_id for entry in self.entries if entry.degree == degree]


SheafFamily = Annotated[
    ArtinSchreierFamily | HypergeometricFamily | TableFamily,
    Field(discriminator="kind"),
]


class FamilyMetadata(BaseModel):
    """Bound inputs derived from (or declared by) a family."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    rank: int
    p: int
    q: int | None = None
    cond_e: int
    f_ram: int
    b1: int | None = None
    e_breaks: Rational | None = None
    general: GeneralParams | None = None

    def curve_params(self) -> CurveParams | None:
        if self.q is None or self.b1 is None or self.e_breaks is None:
            return None
        return CurveParams(
            r=self.rank,
            q=self.q,
            p=self.p,
            cond_e=self.cond_e,
            f_ram=self.f_ram,
            b1=self.b1,
            e_breaks=self.e_breaks,
        )


def table_general_params(fam: TableFamily) -> GeneralParams | None:
    if None in (fam.q, fam.ambient_n, fam.complexity, fam.c_x):
        return None
    return GeneralParams(
        r=fam.rank,
        q=fam.q,
        p=fam.gauss_p,
        cond_e=fam.cond_e or fam.conductor,
        f_ram=fam.f_ram or 1,
        ambient_n=fam.ambient_n,
        complexity=fam.complexity,
        c_x=fam.c_x,
        d_ext=fam.d_ext or euler_phi(fam.cond_e or fam.conductor),
    )
