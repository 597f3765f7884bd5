"""Pydantic field types for exact values in JSON reports.

JSON consumers commonly parse numbers as IEEE doubles, so integers beyond
``2**53`` are written as decimal strings, and rationals always travel as
``"num/den"`` strings.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Annotated

from pydantic import PlainSerializer, PlainValidator

from finmono.arith import format_fraction, parse_fraction

JSON_SAFE_INTEGER = 2**53


def int_for_json(value: int) -> int | str:
    return str(value) if abs(value) > JSON_SAFE_INTEGER else value


JsonInt = Annotated[int, PlainSerializer(int_for_json, when_used="json")]

Rational = Annotated[
    Fraction,
    PlainValidator(parse_fraction),
    PlainSerializer(format_fraction, return_type=str, when_used="json"),
]

__all__ = ["JSON_SAFE_INTEGER", "JsonInt", "Rational", "int_for_json"]
