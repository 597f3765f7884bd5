"""Randomized check that a few power sums decide integrality.

Elements are sampled in the totally ramified local field ``Q_p(pi)`` with
``pi**e = p``: an element is ``sum_{i<e} c_i pi**i`` with rational ``c_i``
and valuation ``min(v_p(c_i) + i / e)``, normalized by ``v(p) = 1``. For
``e = 1`` this is ``Q`` at ``p``; ``e = p - 1`` has the ramification of
``Q(zeta_p)``.
"""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass
from fractions import Fraction

from pydantic import BaseModel, ConfigDict, Field

from finmono.arith import ParameterError, format_fraction, p_adic_valuation
from finmono.bounds import n_power_sums

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class LocalElem:
    """``sum coeffs[i] * pi**i`` in ``Q_p(pi)``, ``pi**e = p``."""

    p: int
    coeffs: tuple[Fraction, ...]

    @property
    def e(self) -> int:
        return len(self.coeffs)

    @classmethod
    def rational(cls, p: int, e: int, value: Fraction | int) -> LocalElem:
        return cls(p, (Fraction(value),) + (Fraction(0),) * (e - 1))

    @classmethod
    def inverse_uniformizer(cls, p: int, e: int) -> LocalElem:
        """``1 / pi = pi**(e-1) / p``."""
        coeffs = [Fraction(0)] * e
        coeffs[e - 1] = Fraction(1, p)
        return cls(p, tuple(coeffs))

    def __add__(self, other: LocalElem) -> LocalElem:
        pairs = zip(self.coeffs, other.coeffs, strict=True)
        return LocalElem(self.p, tuple(a + b for a, b in pairs))

    def __neg__(self) -> LocalElem:
        return LocalElem(self.p, tuple(-a for a in self.coeffs))

    def __mul__(self, other: LocalElem) -> LocalElem:
        e = self.e
        out = [Fraction(0)] * e
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(other.coeffs):
                if not b:
                    continue
                k = i + j
                if k >= e:
                    out[k - e] += self.p * a * b
                else:
                    out[k] += a * b
        return LocalElem(self.p, tuple(out))

    def valuation(self) -> Fraction | None:
        """``v(self)`` with ``v(p) = 1``; ``None`` for zero."""
        values = [
            p_adic_valuation(c.numerator, self.p)
            - p_adic_valuation(c.denominator, self.p)
            + Fraction(i, self.e)
            for i, c in enumerate(self.coeffs)
            if c
        ]
        return min(values) if values else None

    def is_integral(self) -> bool:
        v = self.valuation()
        return v is None or v >= 0

    def __str__(self) -> str:
        terms = [
            format_fraction(c) if i == 0 else f"{format_fraction(c)}*pi^{i}"
            for i, c in enumerate(self.coeffs)
            if c
        ]
        return " + ".join(terms) or "0"


def power_sums(alphas: list[LocalElem], count: int) -> list[LocalElem]:
    """``[sum alpha**k for k in 1..count]``."""
    p, e = alphas[0].p, alphas[0].e
    powers = list(alphas)
    sums = []
    for _ in range(count):
        total = LocalElem.rational(p, e, 0)
        for x in powers:
            total = total + x
        sums.append(total)
        powers = [x * a for x, a in zip(powers, alphas, strict=True)]
    return sums


def integral_prefix(sums: list[LocalElem]) -> int:
    """Number of leading power sums that are integral."""
    for k, s in enumerate(sums):
        if not s.is_integral():
            return k
    return len(sums)


class OracleReport(BaseModel):
    """Outcome of :func:`power_sum_integrality_oracle`."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    r: int
    e_ram: int
    p: int
    N: int = Field(description="Power sums that decide integrality.")
    trials: int
    admissible: int = Field(
        description="Samples whose first N power sums are integral."
    )
    passed: bool
    counterexample: list[str] | None = None
    witness: list[str] = Field(
        description="Non-integral elements with the longest integral prefix found."
    )
    witness_prefix: int = Field(
        description="Leading integral power sums of the witness, at most N - 1."
    )
    sharp: bool = Field(
        description="True when the witness reaches N - 1, so N cannot be lowered."
    )
    candidates: int = Field(description="Multisets tried by the witness search.")


def _random_elem(rng: random.Random, p: int, e: int) -> LocalElem:
    return LocalElem(
        p,
        tuple(
            Fraction(rng.randint(-p * p, p * p), p ** rng.choice((0, 0, 0, 1, 2)))
            for _ in range(e)
        ),
    )


def _sample(rng: random.Random, p: int, e: int, r: int) -> list[LocalElem]:
    alphas: list[LocalElem] = []
    while len(alphas) < r:
        x = _random_elem(rng, p, e)
        alphas.append(x)
        if len(alphas) < r and rng.random() < 0.5:
            alphas.append(-x)
    return alphas


def _seed_candidates(p: int, e: int, r: int) -> list[list[LocalElem]]:
    """``{pi**-j, -pi**-j, 0, ...}`` for ``j = 1..e``."""
    inv = LocalElem.inverse_uniformizer(p, e)
    zero = LocalElem.rational(p, e, 0)
    seeds = []
    power = inv
    for _ in range(e):
        seeds.append([power, -power, *[zero] * (r - 2)] if r >= 2 else [power])
        power = power * inv
    return seeds


def _search_candidate(rng: random.Random, p: int, e: int, r: int) -> list[LocalElem]:
    inv = LocalElem.inverse_uniformizer(p, e)
    alphas = _sample(rng, p, e, r)
    # at least one element must fail integrality
    if all(a.is_integral() for a in alphas):
        i = rng.randrange(r)
        alphas[i] = alphas[i] + inv
    return alphas


def _witness_search(
    rng: random.Random, p: int, e: int, r: int, bound: int, budget: int
) -> tuple[list[LocalElem], int, int]:
    """Longest integral power-sum prefix among non-integral multisets.

    Stops early once a multiset reaches ``bound - 1``. A multiset reaching
    ``bound`` is returned as is; the caller treats it as a counterexample.
    """
    best: list[LocalElem] = []
    best_prefix = -1
    tried = 0
    seeds = _seed_candidates(p, e, r)
    while tried < len(seeds) + budget:
        alphas = (
            seeds[tried] if tried < len(seeds) else _search_candidate(rng, p, e, r)
        )
        tried += 1
        if all(a.is_integral() for a in alphas):
            continue
        prefix = integral_prefix(power_sums(alphas, bound))
        if prefix > best_prefix:
            best, best_prefix = alphas, prefix
        if best_prefix >= bound - 1:
            break
    logger.debug(
        "witness search r=%d e=%d p=%d: prefix %d of %d after %d candidates",
        r,
        e,
        p,
        best_prefix,
        bound,
        tried,
    )
    return best, best_prefix, tried


def power_sum_integrality_oracle(
    r: int, e_ram: int, p: int, trials: int = 100, seed: int = 0
) -> OracleReport:
    """Sample ``r`` elements ``trials`` times and test the power-sum criterion.

    Every sample whose first ``N = n_power_sums(r, e_ram, p)`` power sums
    are integral must consist of integral elements. Samples contain
    cancelling pairs ``x, -x`` so that odd power sums vanish.

    A second seeded pass of up to ``trials`` multisets looks for non-integral
    elements with as many leading integral power sums as possible, starting
    from ``{pi**-j, -pi**-j}`` padded with zeros. The report is ``sharp``
    when that witness reaches ``N - 1``. A multiset found with all ``N``
    power sums integral is a counterexample.

    Raises:
        ParameterError: If ``r < 1`` or ``e_ram < 1``.
    """
    if r < 1:
        msg = f"r must be >= 1, got {r}"
        raise ParameterError(msg)
    bound = n_power_sums(r, e_ram, p)
    rng = random.Random(seed)
    admissible = 0
    counterexample = None
    for _ in range(trials):
        alphas = _sample(rng, p, e_ram, r)
        if integral_prefix(power_sums(alphas, bound)) < bound:
            continue
        admissible += 1
        if not all(a.is_integral() for a in alphas):
            counterexample = [str(a) for a in alphas]
            logger.warning("power-sum criterion fails for %s", counterexample)
            break

    witness, prefix, tried = _witness_search(rng, p, e_ram, r, bound, trials)
    if prefix >= bound and counterexample is None:
        counterexample = [str(a) for a in witness]
        logger.warning("power-sum criterion fails for %s", counterexample)
    return OracleReport(
        r=r,
        e_ram=e_ram,
        p=p,
        N=bound,
        trials=trials,
        admissible=admissible,
        passed=counterexample is None,
        counterexample=counterexample,
        witness=[str(a) for a in witness],
        witness_prefix=min(prefix, bound - 1),
        sharp=prefix == bound - 1,
        candidates=tried,
    )
