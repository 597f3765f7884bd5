"""Trace values carried as ``numerator / G**k``.

Dividing by a power of the Gauss sum leaves ``Z[zeta_p]``, and the
integrality checks need the exact numerator, so engines return the pair and
only :meth:`NormalizedTrace.value` performs the division.
"""

from __future__ import annotations

from fractions import Fraction

from pydantic import BaseModel, ConfigDict, Field, model_validator

from finmono.cyclotomic import (
    ConductorMismatchError,
    CycNum,
    CycNumField,
    UnsupportedNormalizationError,
    gauss_square_sign,
    p_integral_everywhere,
    quadratic_gauss_sum,
)


class NormalizedTrace(BaseModel):
    """The value ``numerator / G**gauss_exponent`` with ``G`` the Gauss sum mod p.

    The numerator's coordinate denominators must be prime to ``gauss_p``.
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    numerator: CycNumField
    gauss_exponent: int = Field(ge=0)
    gauss_p: int = Field(ge=2, description="Prime whose Gauss sum normalizes.")

    @model_validator(mode="after")
    def _numerator_p_integral(self) -> NormalizedTrace:
        if not p_integral_everywhere(self.numerator, self.gauss_p):
            msg = (
                f"numerator {self.numerator} has a coordinate denominator "
                f"divisible by p={self.gauss_p}"
            )
            raise ValueError(msg)
        return self

    def value(self) -> CycNum:
        """The exact quotient, in the numerator's field.

        Raises:
            UnsupportedNormalizationError: For ``p = 2`` with a non-zero exponent.
            ConductorMismatchError: For an odd exponent when ``p`` does not
                divide the numerator's conductor.
        """
        k = self.gauss_exponent
        if k == 0:
            return self.numerator
        p = self.gauss_p
        if p == 2:
            msg = "no Gauss-sum normalization exists for p = 2"
            raise UnsupportedNormalizationError(msg)
        square = Fraction(gauss_square_sign(p) * p)
        if k % 2 == 0:
            return self.numerator / square ** (k // 2)
        if self.numerator.conductor % p:
            msg = (
                f"odd Gauss exponent needs p={p} to divide the conductor "
                f"{self.numerator.conductor}"
            )
            raise ConductorMismatchError(msg)
        g = quadratic_gauss_sum(p).lift(self.numerator.conductor)
        return self.numerator * g / square ** ((k + 1) // 2)
