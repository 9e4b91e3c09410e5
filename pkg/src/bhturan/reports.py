"""Report assembly, serialisation and graph6 file ingestion.

JSON reports are single documents::

    {"schema_version": ..., "command": ..., "config": {...},
     "records": [...], "summary": {...}, "wall_clock": seconds}

CSV reports carry one row per record. Columns are ``id`` and ``graph6`` first,
then every other (flattened, dot-joined) record field in sorted order.

:func:`normalize` removes the fields that legitimately vary between otherwise
identical runs (``wall_clock`` and the execution-only config keys ``workers``
and ``output``) so reports can be compared byte for byte.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable

from .errors import CapacityError, Graph6Error
from .graph import Graph
from .graph6 import from_graph6

SCHEMA_VERSION = 1
EXECUTION_ONLY = ("workers", "output")


@dataclass
class Report:
    command: str
    config: dict
    records: list[dict] = field(default_factory=list)
    summary: dict = field(default_factory=dict)
    wall_clock: float = 0.0
    schema_version: int = SCHEMA_VERSION

    def to_dict(self) -> dict:
        return {
            "schema_version": self.schema_version,
            "command": self.command,
            "config": self.config,
            "records": self.records,
            "summary": self.summary,
            "wall_clock": self.wall_clock,
        }


def _clean(value):
    if isinstance(value, float) and not math.isfinite(value):
        return None
    if isinstance(value, dict):
        return {str(k): _clean(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_clean(v) for v in value]
    return value


def to_json(report: Report | dict) -> str:
    d = report.to_dict() if isinstance(report, Report) else report
    return json.dumps(_clean(d), indent=2, sort_keys=True) + "\n"


def normalize(report: Report | dict) -> dict:
    d = json.loads(to_json(report))
    d.pop("wall_clock", None)
    for key in EXECUTION_ONLY:
        d.get("config", {}).pop(key, None)
    return d


def normalized_json(report: Report | dict) -> str:
    return json.dumps(normalize(report), indent=2, sort_keys=True) + "\n"


def _flatten(d: dict, prefix: str = "") -> dict:
    out = {}
    for k, v in d.items():
        key = f"{prefix}{k}"
        if isinstance(v, dict):
            out.update(_flatten(v, key + "."))
        elif isinstance(v, (list, tuple)):
            out[key] = json.dumps(_clean(list(v)))
        else:
            out[key] = v
    return out


def to_csv(report: Report) -> str:
    rows = [_flatten(_clean(r)) for r in report.records]
    keys = sorted({k for r in rows for k in r} - {"id", "graph6"})
    cols = [c for c in ("id", "graph6") if any(c in r for r in rows)] + keys
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=cols, lineterminator="\n", extrasaction="ignore")
    writer.writeheader()
    for r in rows:
        writer.writerow({c: "" if r.get(c) is None else r.get(c) for c in cols})
    return buf.getvalue()


def emit_report(report: Report, fmt: str = "json", path: str | Path | None = None) -> str:
    """Serialise ``report``; write it to ``path`` when given. Returns the text."""
    if fmt == "json":
        text = to_json(report)
    elif fmt == "csv":
        text = to_csv(report)
    else:
        raise ValueError(f"unknown report format {fmt!r}")
    if path is not None:
        Path(path).write_text(text, encoding="ascii")
    return text


class Graph6FileError(ValueError):
    """One or more lines of a graph6 file failed to parse."""

    def __init__(self, errors: list[tuple[int, str]]):
        self.errors = errors
        super().__init__("; ".join(f"line {ln}: {msg}" for ln, msg in errors))


def parse_graph6_lines(lines: Iterable[str]) -> list[tuple[int, Graph]]:
    """Decode newline-delimited graph6 records, keeping 1-based line numbers.

    Blank lines are skipped. Every bad line is collected before raising.
    """
    out = []
    errors = []
    for ln, line in enumerate(lines, start=1):
        text = line.strip()
        if not text:
            continue
        try:
            out.append((ln, from_graph6(text)))
        except (Graph6Error, CapacityError) as exc:
            errors.append((ln, str(exc)))
    if errors:
        raise Graph6FileError(errors)
    return out


def ingest_graph6_file(path: str | Path) -> list[tuple[int, Graph]]:
    with open(path, encoding="ascii", errors="replace") as fh:
        return parse_graph6_lines(fh)
