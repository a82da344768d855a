from __future__ import annotations

import json
import logging
import math
from collections.abc import Mapping
from pathlib import Path
from typing import Any, Literal, Optional

import numpy as np
import polars as pl
from pydantic import BaseModel

from zerogrowth.models import EvidenceTable, ReportDoc

log = logging.getLogger(__name__)

_DTYPES = {"int": pl.Int64, "float": pl.Float64}


def _key(key: Any) -> str:
    if isinstance(key, tuple):
        return ",".join(_key(part) for part in key)
    if isinstance(key, float):
        return repr(key)
    return str(key)


def plain(obj: Any) -> Any:
    """
    JSON-ready copy of a report payload: numpy scalars unwrapped, complex numbers as
    {"re", "im"}, non-finite floats as "inf"/"-inf"/"nan", mapping keys as strings.
    """

    if obj is None or isinstance(obj, (str, bool, np.bool_)):
        return bool(obj) if isinstance(obj, np.bool_) else obj
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        value = float(obj)
        if math.isnan(value):
            return "nan"
        if math.isinf(value):
            return "inf" if value > 0 else "-inf"
        return value
    if isinstance(obj, (complex, np.complexfloating)):
        return {"re": plain(obj.real), "im": plain(obj.imag)}
    if isinstance(obj, BaseModel):
        return plain(obj.model_dump(mode="python"))
    if isinstance(obj, Mapping):
        return {_key(k): plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, np.ndarray)):
        return [plain(v) for v in obj]
    raise TypeError(f"cannot serialize {type(obj).__name__} into a report")


def render_json(report: ReportDoc) -> str:
    """Sorted keys, shortest round-trip float repr, no timestamps: identical input, identical bytes."""

    payload = plain(report.model_dump(mode="python"))
    return json.dumps(payload, sort_keys=True, indent=2, ensure_ascii=False, allow_nan=False) + "\n"


def evidence_frame(table: EvidenceTable) -> pl.DataFrame:
    """Tidy frame of an evidence table; an empty table still carries its header."""

    data: dict[str, list[Any]] = {}
    for i, (column, dtype) in enumerate(zip(table.columns, table.dtypes)):
        cast = int if dtype == "int" else float
        data[column] = [cast(row[i]) for row in table.rows]
    schema = {c: _DTYPES[d] for c, d in zip(table.columns, table.dtypes)}
    return pl.DataFrame(data, schema=schema)


def render_csv(table: EvidenceTable) -> str:
    return evidence_frame(table).write_csv()


class ReportStore:
    """Writes a report as JSON, or as its evidence CSV with the JSON report beside it."""

    def __init__(self, out_path: Path, *, fmt: Literal["json", "csv"] = "json") -> None:
        self._out_path = out_path
        self._fmt = fmt

    def write(self, report: ReportDoc) -> list[Path]:
        self._out_path.parent.mkdir(parents=True, exist_ok=True)
        written: list[Path] = []
        if self._fmt == "csv":
            json_path = self._out_path.with_suffix(".json")
            self._out_path.write_text(render_csv(report.evidence), encoding="utf-8")
            written.append(self._out_path)
        else:
            json_path = self._out_path
        json_path.write_text(render_json(report), encoding="utf-8")
        written.append(json_path)
        log.info("report written command=%s paths=%s", report.command, ",".join(map(str, written)))
        return written


_NONFINITE = {"inf": math.inf, "-inf": -math.inf, "nan": math.nan}
_SKIP = object()


def _number(value: Any) -> Any:
    if value is None:
        return None
    if isinstance(value, bool):
        return int(value)
    if isinstance(value, (int, float)):
        return value
    if isinstance(value, str) and value in _NONFINITE:
        return _NONFINITE[value]
    return _SKIP


def _flat_row(row: Mapping[str, Any]) -> Optional[dict[str, Any]]:
    out: dict[str, Any] = {}
    for key, value in row.items():
        if isinstance(value, Mapping) and set(value) == {"re", "im"}:
            parts = {f"{key}_re": _number(value["re"]), f"{key}_im": _number(value["im"])}
        else:
            parts = {key: _number(value)}
        if any(v is _SKIP for v in parts.values()):
            return None
        out.update(parts)
    return out


def _rows_frame(rows: list[dict[str, Any]]) -> pl.DataFrame:
    columns = list(dict.fromkeys(key for row in rows for key in row))
    data: dict[str, list[Any]] = {}
    schema: dict[str, Any] = {}
    for column in columns:
        values = [row.get(column) for row in rows]
        integral = all(v is None or isinstance(v, int) for v in values)
        schema[column] = pl.Int64 if integral else pl.Float64
        data[column] = values if integral else [None if v is None else float(v) for v in values]
    return pl.DataFrame(data, schema=schema)


def nested_tables(results: Mapping[str, Any], prefix: str = "") -> dict[str, pl.DataFrame]:
    """
    Row lists buried in a report's results, keyed by their dotted path. A list qualifies when
    every item is a mapping of numbers, booleans or {"re", "im"} pairs.
    """

    found: dict[str, pl.DataFrame] = {}
    for key, value in results.items():
        path = f"{prefix}{key}"
        if isinstance(value, Mapping):
            found.update(nested_tables(value, f"{path}."))
        elif isinstance(value, list) and value and all(isinstance(row, Mapping) for row in value):
            rows = [_flat_row(row) for row in value]
            if all(row is not None for row in rows):
                found[path] = _rows_frame(rows)  # type: ignore[arg-type]
    return found


def write_plotdata(report: ReportDoc, out_path: Optional[Path]) -> str:
    """Flatten the report's evidence to CSV, to `out_path` when given; returns the CSV text."""

    text = render_csv(report.evidence)
    if out_path is not None:
        out_path.parent.mkdir(parents=True, exist_ok=True)
        out_path.write_text(text, encoding="utf-8")
    return text


def write_nested_plotdata(report: ReportDoc, out_path: Path) -> list[Path]:
    """One CSV per nested row list, named `<stem>.<dotted path>.csv` beside `out_path`."""

    written: list[Path] = []
    out_path.parent.mkdir(parents=True, exist_ok=True)
    for path, frame in nested_tables(report.results).items():
        target = out_path.with_name(f"{out_path.stem}.{path}.csv")
        target.write_text(frame.write_csv(), encoding="utf-8")
        written.append(target)
    log.info("nested plot tables written command=%s count=%s", report.command, len(written))
    return written
