"""Runtime resource limits.

Two caps keep the tool total on desk hardware: the size of any lookup table
(discrete logarithms, traces, enumerations) and the number of decimal digits
an exact bound may materialize before the bounds module switches to
magnitude reporting. ``FINMONO_MAX_MEMORY`` derives both from a byte budget.
"""

from __future__ import annotations

import logging
import os
import re

from pydantic import BaseModel, ConfigDict, Field

logger = logging.getLogger(__name__)

MEMORY_ENV_VAR = "FINMONO_MAX_MEMORY"
DEFAULT_MAX_TABLE_SIZE = 2**20
DEFAULT_MAX_DIGITS = 400

# Rough per-entry cost of the exp, log and trace tables together.
BYTES_PER_TABLE_ENTRY = 64
# Working-set allowance per materialized decimal digit of a bound.
BYTES_PER_DIGIT = 2**14

_MEMORY_PATTERN = re.compile(r"^\s*(\d+)\s*([KMG]?)B?\s*$", re.IGNORECASE)
_SUFFIX = {"": 1, "K": 2**10, "M": 2**20, "G": 2**30}


class ConfigError(ValueError):
    """Raised for malformed runtime configuration."""


def parse_memory(text: str) -> int:
    """Parse ``"1048576"``, ``"512K"``, ``"64M"`` or ``"2G"`` into bytes."""
    match = _MEMORY_PATTERN.match(text)
    if not match:
        msg = f"{MEMORY_ENV_VAR} must be a byte count with optional K/M/G: {text!r}"
        raise ConfigError(msg)
    return int(match.group(1)) * _SUFFIX[match.group(2).upper()]


class RuntimeLimits(BaseModel):
    """Caps applied by the table builders and the bound calculators."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    max_table_size: int = Field(
        default=DEFAULT_MAX_TABLE_SIZE,
        ge=1,
        description="Largest field (in elements) that gets full lookup tables.",
    )
    max_digits: int = Field(
        default=DEFAULT_MAX_DIGITS,
        ge=1,
        description="Largest exact bound argument, in decimal digits.",
    )

    @classmethod
    def from_env(cls, environ: dict[str, str] | None = None) -> RuntimeLimits:
        """Build limits from ``FINMONO_MAX_MEMORY`` when it is set."""
        env = os.environ if environ is None else environ
        raw = env.get(MEMORY_ENV_VAR)
        if not raw:
            return cls()
        budget = parse_memory(raw)
        limits = cls(
            max_table_size=max(1, budget // BYTES_PER_TABLE_ENTRY),
            max_digits=max(1, budget // BYTES_PER_DIGIT),
        )
        logger.debug(
            "%s=%s gives max_table_size=%d max_digits=%d",
            MEMORY_ENV_VAR,
            raw,
            limits.max_table_size,
            limits.max_digits,
        )
        return limits
