"""Report assembly and serialisation (csv, json, pretty).

Reports are plain column/row structures with optional per-column display
conventions (digit count plus "ceil"/"floor" rounding, mirroring how the
reference tables print their last digit).  Emission is deterministic: fixed
row order, '.' decimal separator, no locale, stable JSON layout.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Optional

from partitio.constants import round_down_str, round_up_str


@dataclass(frozen=True)
class Column:
    name: str
    digits: Optional[int] = None
    convention: Optional[str] = None  # "ceil" | "floor" | None


@dataclass
class Report:
    name: str
    columns: list[Column]
    rows: list[list[Any]]
    meta: dict = field(default_factory=dict)
    ok: bool = True


def _display(value: Any, col: Column) -> str:
    if isinstance(value, Fraction):
        value = float(value) if col.digits is not None else value
    if col.digits is not None and isinstance(value, float):
        if col.convention == "ceil":
            return round_up_str(value, col.digits)
        if col.convention == "floor":
            return round_down_str(value, col.digits)
        return f"{value:.{col.digits}f}"
    if isinstance(value, float):
        return repr(value)
    if isinstance(value, bool):
        return "true" if value else "false"
    return str(value)


def emit_csv(report: Report) -> str:
    lines = [",".join(c.name for c in report.columns)]
    for row in report.rows:
        lines.append(",".join(_display(v, c) for v, c in zip(row, report.columns)))
    return "\n".join(lines) + "\n"


def _json_payload(report: Report) -> dict:
    cols = []
    for c in report.columns:
        entry: dict[str, Any] = {"name": c.name}
        if c.digits is not None:
            entry["digits"] = c.digits
        if c.convention is not None:
            entry["convention"] = c.convention
        cols.append(entry)
    rows = []
    for row in report.rows:
        rows.append(
            [float(v) if isinstance(v, Fraction) else v for v in row]
        )
    displays = [
        [_display(v, c) for v, c in zip(row, report.columns)] for row in report.rows
    ]
    return {
        "name": report.name,
        "ok": report.ok,
        "columns": cols,
        "rows": rows,
        "display": displays,
        "meta": report.meta,
    }


def emit_json(report: Report) -> str:
    return json.dumps(_json_payload(report), indent=2, sort_keys=True) + "\n"


def reemit_json(payload_text: str) -> str:
    """Parse emitted JSON and re-serialise; byte-identical by construction."""
    return json.dumps(json.loads(payload_text), indent=2, sort_keys=True) + "\n"


def emit_pretty(report: Report) -> str:
    headers = [c.name for c in report.columns]
    cells = [
        [_display(v, c) for v, c in zip(row, report.columns)] for row in report.rows
    ]
    widths = [
        max(len(headers[i]), *(len(r[i]) for r in cells)) if cells else len(headers[i])
        for i in range(len(headers))
    ]
    out = [report.name, "=" * len(report.name)]
    out.append("  ".join(h.ljust(w) for h, w in zip(headers, widths)))
    out.append("  ".join("-" * w for w in widths))
    for r in cells:
        out.append("  ".join(v.ljust(w) for v, w in zip(r, widths)))
    if report.meta:
        out.append("")
        for key in report.meta:
            out.append(f"{key}: {report.meta[key]}")
    out.append("")
    out.append(f"status: {'ok' if report.ok else 'FAILED'}")
    return "\n".join(out) + "\n"


def emit(report: Report, fmt: str) -> str:
    if fmt == "csv":
        return emit_csv(report)
    if fmt == "json":
        return emit_json(report)
    if fmt == "pretty":
        return emit_pretty(report)
    raise ValueError(f"unknown format {fmt!r}")
