"""JSON and CSV renderings of run reports.

Exact rationals become ``"p/q"`` strings, integers beyond the double
range become decimal strings, floats keep their shortest round-trip repr.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence

from group.genset import GenSet
from experiments.config import SCHEMA

SAFE_INT = 2**53


def to_jsonable(obj: Any) -> Any:
    if isinstance(obj, bool) or obj is None or isinstance(obj, (str, float)):
        return obj
    if isinstance(obj, Fraction):
        return f"{obj.numerator}/{obj.denominator}"
    if isinstance(obj, int):
        return obj if abs(obj) < SAFE_INT else str(obj)
    if isinstance(obj, GenSet):
        return obj.text()
    if hasattr(obj, "to_dict"):
        return to_jsonable(obj.to_dict())
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    raise TypeError(f"cannot serialize {type(obj).__name__}")


@dataclass
class Report:
    """Tabular result of one command.

    Attributes:
        columns: Column names, in output order.
        rows:    One dict per row keyed by column name.
        summary: Scalars describing the whole run.
        detail:  Extra structured data (JSON only).
        ok:      False if any certificate flag failed.
    """

    command: str
    config: Dict[str, Any]
    columns: List[str]
    rows: List[Dict[str, Any]] = field(default_factory=list)
    summary: Dict[str, Any] = field(default_factory=dict)
    detail: Optional[Dict[str, Any]] = None
    ok: bool = True

    def to_dict(self) -> Dict[str, Any]:
        out = {
            "schema": SCHEMA,
            "command": self.command,
            "config": self.config,
            "columns": self.columns,
            "rows": self.rows,
            "summary": self.summary,
            "ok": self.ok,
        }
        if self.detail is not None:
            out["detail"] = self.detail
        return out


def render_json(report: Report) -> str:
    return json.dumps(to_jsonable(report), indent=2, sort_keys=True) + "\n"


def _cell(value: Any) -> str:
    value = to_jsonable(value)
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (dict, list)):
        return json.dumps(value, sort_keys=True, separators=(",", ":"))
    return str(value)


def render_csv(report: Report) -> str:
    """Comment lines for schema and config, the table, then a summary comment."""
    buf = io.StringIO()
    compact = dict(sort_keys=True, separators=(",", ":"))
    buf.write(f"# schema: {SCHEMA}\n")
    buf.write(f"# command: {report.command}\n")
    buf.write(f"# config: {json.dumps(to_jsonable(report.config), **compact)}\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(report.columns)
    for row in report.rows:
        writer.writerow([_cell(row.get(c)) for c in report.columns])
    buf.write(f"# summary: {json.dumps(to_jsonable(report.summary), **compact)}\n")
    buf.write(f"# ok: {_cell(report.ok)}\n")
    return buf.getvalue()


def render(report: Report, fmt: str) -> str:
    if fmt == "json":
        return render_json(report)
    if fmt == "csv":
        return render_csv(report)
    raise ValueError(f"unknown format {fmt!r}; expected json or csv")


def parse_csv(text: str) -> Dict[str, Any]:
    """Read back ``render_csv`` output: config, columns, rows (strings) and summary."""
    lines = text.splitlines()
    meta: Dict[str, Any] = {}
    body: List[str] = []
    for line in lines:
        if line.startswith("# "):
            key, _, value = line[2:].partition(": ")
            meta[key] = value
        else:
            body.append(line)
    reader = csv.reader(body)
    table: Sequence[List[str]] = list(reader)
    columns = table[0] if table else []
    return {
        "schema": meta.get("schema"),
        "command": meta.get("command"),
        "config": json.loads(meta.get("config", "{}")),
        "columns": columns,
        "rows": [dict(zip(columns, r)) for r in table[1:]],
        "summary": json.loads(meta.get("summary", "{}")),
    }
