"""CSV and JSON serialization of run results.

CSV: one header row, fixed column order, '.' decimal point, floats written
with ``repr`` (shortest round-trip form). JSON: a single object holding the
schema tag, the config echo, the unit map, the records and a summary. Both
are byte-stable for a fixed config.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from typing import Any

SCHEMA_VERSION = 1


@dataclass
class Report:
    kind: str
    columns: list[str]
    units: dict[str, str]
    records: list[dict[str, Any]]
    config: dict[str, Any] = field(default_factory=dict)
    summary: dict[str, Any] = field(default_factory=dict)
    notes: list[str] = field(default_factory=list)

    @property
    def schema(self) -> str:
        return f"nullpoint.{self.kind}/{SCHEMA_VERSION}"

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(self.columns)
        for rec in self.records:
            w.writerow([_csv_cell(rec.get(c)) for c in self.columns])
        return buf.getvalue()

    def to_json(self) -> str:
        obj = {
            "schema": self.schema,
            "config": _jsonable(self.config),
            "units": self.units,
            "columns": self.columns,
            "records": [{c: _jsonable(r.get(c)) for c in self.columns} for r in self.records],
            "summary": _jsonable(self.summary),
            "notes": self.notes,
        }
        return json.dumps(obj, indent=2, allow_nan=False) + "\n"

    def summary_json(self) -> str:
        obj = {
            "schema": f"nullpoint.{self.kind}-summary/{SCHEMA_VERSION}",
            "config": _jsonable(self.config),
            "summary": _jsonable(self.summary),
            "notes": self.notes,
        }
        return json.dumps(obj, indent=2, allow_nan=False) + "\n"

    def render(self, fmt: str) -> str:
        if fmt == "csv":
            return self.to_csv()
        if fmt == "json":
            return self.to_json()
        raise ValueError(f"unknown format {fmt!r}")


def _csv_cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return repr(v) if math.isfinite(v) else ""
    return str(v)


def _jsonable(v):
    if isinstance(v, float):
        return v if math.isfinite(v) else None
    if isinstance(v, dict):
        return {str(k): _jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    if hasattr(v, "item") and callable(v.item):
        return _jsonable(v.item())
    return v
