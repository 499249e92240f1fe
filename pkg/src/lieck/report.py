"""Rendering of verification reports as text, canonical JSON, or CSV.

Reports are plain dicts assembled by the CLI: ``{"schema": 1, "target":
<name>, "ok": <bool>, ...}`` plus target-specific payload, with per-item
results in a list of dicts under one of the keys in ``ROW_KEYS``.  JSON
output is canonical (sorted keys, compact separators, no trailing spaces) so
byte-identical inputs give byte-identical reports regardless of worker count
or environment.
"""

from __future__ import annotations

import csv
import io
import json

SCHEMA = 1

ROW_KEYS = ("rows", "cases", "pairs", "types")


def rows_of(report: dict) -> list:
    """The per-item result list of a report, or [] when it has none."""
    for key in ROW_KEYS:
        value = report.get(key)
        if isinstance(value, list) and all(isinstance(v, dict) for v in value):
            return value
    return []


def render_json(report: dict) -> str:
    return json.dumps(report, sort_keys=True, separators=(",", ":"), default=str)


def _cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (list, dict, tuple)):
        return json.dumps(value, sort_keys=True, separators=(",", ":"), default=str)
    return str(value)


def render_csv(report: dict) -> str:
    rows = rows_of(report)
    if not rows:
        rows = [{k: v for k, v in report.items() if not isinstance(v, (list, dict))}]
    header: list[str] = []
    for row in rows:
        for key in row:
            if key not in header:
                header.append(key)
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=header, lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow({key: _cell(row.get(key)) for key in header})
    return buf.getvalue()


def _fmt(value) -> str:
    if value is None:
        return "-"
    if isinstance(value, bool):
        return "yes" if value else "no"
    if isinstance(value, (list, dict, tuple)):
        return json.dumps(value, sort_keys=True, separators=(",", ":"), default=str)
    return str(value)


def _row_line(row: dict) -> str:
    # passed sub-checks and empty problem lists stay silent; what remains is
    # the row's identity, its scalar results, and anything that went wrong
    parts = []
    for key, value in row.items():
        if isinstance(value, (list, tuple)) and not value:
            continue
        if isinstance(value, dict) and value.get("ok", False) is True:
            continue
        parts.append(f"{key}={_fmt(value)}")
    return "  " + " ".join(parts)


def render_text(report: dict) -> str:
    target = report.get("target", "report")
    ok = report.get("ok")
    lines = [f"{target}: {'ok' if ok else 'FAILED'}" if ok is not None else target]
    scalars = {
        k: v
        for k, v in report.items()
        if k not in ("schema", "target", "ok") and not isinstance(v, (list, dict))
    }
    if scalars:
        lines.append("  " + " ".join(f"{k}={_fmt(v)}" for k, v in scalars.items()))
    for row in rows_of(report):
        lines.append(_row_line(row))
    return "\n".join(lines) + "\n"


def render(report: dict, fmt: str = "text") -> str:
    if fmt == "json":
        return render_json(report) + "\n"
    if fmt == "csv":
        return render_csv(report)
    if fmt == "text":
        return render_text(report)
    raise ValueError(f"unknown format {fmt!r}")
