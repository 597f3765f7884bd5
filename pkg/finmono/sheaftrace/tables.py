"""Line-oriented trace-table files.

::

    # comments and blank lines are ignored
    conductor=3 gauss_p=3 rank=1 q=3 b1=0 e_breaks=1/1
    1 0 1 0/1 -1/1
    1 1 1 2/1 1/1

The header carries ``key=value`` tokens: ``conductor`` and ``gauss_p`` are
required, the rest declare bound metadata. Each row is ``degree point_id
exponent`` followed by the ``phi(conductor)`` numerator coordinates as
``num/den``; a bare integer is read as ``n/1``.

Reading normalizes: coordinates are reduced, header keys take a fixed order
and an omitted ``rank`` becomes ``rank=1``. :func:`write_trace_table` emits
that normal form, so text already in normal form round-trips byte for byte,
and any table survives write-then-read unchanged.
"""

from __future__ import annotations

import logging
from pathlib import Path

from pydantic import ValidationError

from finmono.arith import ParameterError, euler_phi, format_fraction, parse_fraction
from finmono.cyclotomic import CycNum
from finmono.sheaftrace.families import TableEntry, TableFamily
from finmono.sheaftrace.values import NormalizedTrace

logger = logging.getLogger(__name__)

HEADER_REQUIRED = ("conductor", "gauss_p")
HEADER_OPTIONAL = (
    "rank",
    "q",
    "b1",
    "e_breaks",
    "cond_e",
    "f_ram",
    "ambient_n",
    "complexity",
    "c_x",
    "d_ext",
)


class TableFormatError(ValueError):
    """Raised for a malformed trace table; ``line`` is 1-based when known."""

    def __init__(self, message: str, line: int | None = None) -> None:
        self.line = line
        prefix = f"line {line}: " if line is not None else ""
        super().__init__(f"{prefix}{message}")


def _parse_header(text: str, line_no: int) -> dict[str, str]:
    fields: dict[str, str] = {}
    for token in text.split():
        key, sep, value = token.partition("=")
        if not sep or not value:
            msg = f"header token {token!r} is not key=value"
            raise TableFormatError(msg, line_no)
        if key not in HEADER_REQUIRED and key not in HEADER_OPTIONAL:
            msg = f"unknown header key {key!r}"
            raise TableFormatError(msg, line_no)
        if key in fields:
            msg = f"header key {key!r} repeated"
            raise TableFormatError(msg, line_no)
        fields[key] = value
    missing = [key for key in HEADER_REQUIRED if key not in fields]
    if missing:
        msg = f"header is missing {', '.join(missing)}"
        raise TableFormatError(msg, line_no)
    return fields


def _parse_row(
    text: str, line_no: int, conductor: int, gauss_p: int
) -> TableEntry:
    parts = text.split()
    width = euler_phi(conductor)
    if len(parts) != 3 + width:
        msg = (
            f"expected degree, point id, exponent and {width} coordinates, "
            f"got {len(parts)} fields"
        )
        raise TableFormatError(msg, line_no)
    try:
        degree, exponent = int(parts[0]), int(parts[2])
        coords = tuple(parse_fraction(c) for c in parts[3:])
        return TableEntry(
            degree=degree,
            point_id=parts[1],
            trace=NormalizedTrace(
                numerator=CycNum(conductor, coords),
                gauss_exponent=exponent,
                gauss_p=gauss_p,
            ),
        )
    except (ValueError, ParameterError) as exc:
        raise TableFormatError(str(exc), line_no) from exc


def read_trace_table(text: str) -> TableFamily:
    """Parse a trace table.

    Raises:
        TableFormatError: On a malformed header or row, or an inconsistent
            table (duplicate entries, bad metadata).
    """
    header: dict[str, str] | None = None
    conductor = gauss_p = 0
    entries: list[TableEntry] = []
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if header is None:
            header = _parse_header(line, line_no)
            try:
                conductor = int(header["conductor"])
                gauss_p = int(header["gauss_p"])
            except ValueError as exc:
                msg = "conductor and gauss_p must be integers"
                raise TableFormatError(msg, line_no) from exc
            if conductor < 1:
                msg = f"conductor must be positive, got {conductor}"
                raise TableFormatError(msg, line_no)
            continue
        entries.append(_parse_row(line, line_no, conductor, gauss_p))
    if header is None:
        msg = "trace table has no header line"
        raise TableFormatError(msg)
    try:
        table = TableFamily(**header, entries=entries)
    except ValidationError as exc:
        raise TableFormatError(str(exc)) from exc
    logger.debug(
        "read trace table: conductor=%d, %d entries", table.conductor, len(entries)
    )
    return table


def load_trace_table(path: str | Path) -> TableFamily:
    return read_trace_table(Path(path).read_text(encoding="utf-8"))


def write_trace_table(fam: TableFamily) -> str:
    """Serialize ``fam`` in the line format, entries in stored order."""
    tokens = [f"conductor={fam.conductor}", f"gauss_p={fam.gauss_p}"]
    for key in HEADER_OPTIONAL:
        value = getattr(fam, key)
        if key == "rank":
            tokens.append(f"rank={value}")
        elif value is not None:
            shown = format_fraction(value) if key == "e_breaks" else str(value)
            tokens.append(f"{key}={shown}")
    lines = [" ".join(tokens)]
    for entry in fam.entries:
        coords = " ".join(format_fraction(c) for c in entry.trace.numerator.coords)
        lines.append(
            f"{entry.degree} {entry.point_id} {entry.trace.gauss_exponent} {coords}"
        )
    return "\n".join(lines) + "\n"
