"""Canonical JSON bytes for reports.

Two scans of the same family under the same budget must agree byte for byte
whatever their worker count, so reports are compared through one
deterministic rendering: ``model_dump(mode="json")``, keys sorted, no
insignificant whitespace, UTF-8. Wall-clock fields are dropped first.
"""

from __future__ import annotations

import hashlib
import json
from typing import Any

from pydantic import BaseModel

VOLATILE_FIELDS = frozenset({"timing"})


def canonicalize_dict(data: dict[str, Any]) -> bytes:
    """Sorted-key compact JSON of a JSON-compatible dict.

    Raises:
        ValueError: If ``data`` contains NaN or an infinity.
    """
    return json.dumps(
        data,
        sort_keys=True,
        separators=(",", ":"),
        ensure_ascii=False,
        allow_nan=False,
    ).encode("utf-8")


def canonicalize_model(
    schema_obj: BaseModel, *, keep_volatile: bool = False
) -> bytes:
    """Canonicalize a pydantic model, without :data:`VOLATILE_FIELDS` by default.

    ``mode="json"`` renders rationals, cyclotomic values and large integers
    through their wire serializers before the bytes are produced.
    """
    exclude = None if keep_volatile else set(VOLATILE_FIELDS)
    return canonicalize_dict(schema_obj.model_dump(mode="json", exclude=exclude))


def sha256_hex_for_model(schema_obj: BaseModel) -> str:
    """SHA-256 of the model's canonical bytes."""
    return hashlib.sha256(canonicalize_model(schema_obj)).hexdigest()


__all__ = [
    "VOLATILE_FIELDS",
    "canonicalize_dict",
    "canonicalize_model",
    "sha256_hex_for_model",
]
