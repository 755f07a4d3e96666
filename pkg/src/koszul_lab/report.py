"""Serialisation of command reports to JSON, CSV or plain text.

A report is a mapping with (some of) the keys ``command``, ``config``,
``summary``, ``results``, ``violations`` and ``runtime_ms``.  Output is
byte-stable: keys are emitted in a fixed order and callers sort their lists.
"""
from __future__ import annotations

import csv
import io
import json
from typing import Any, Mapping

KEY_ORDER = ("command", "config", "summary", "results", "violations", "runtime_ms")
BETTI_COLUMNS = ("i", "lambda", "rank", "degree")


def _ordered(report: Mapping[str, Any]) -> dict:
    out = {}
    for k in KEY_ORDER:
        if k in report:
            out[k] = report[k]
        elif k in ("results", "violations"):
            out[k] = []
    return out


def _jsonable(x: Any) -> Any:
    if isinstance(x, tuple):
        return [_jsonable(v) for v in x]
    if isinstance(x, list):
        return [_jsonable(v) for v in x]
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    return x


def to_json(report: Mapping[str, Any]) -> str:
    return json.dumps(_jsonable(_ordered(report)), separators=(",", ":"))


def _cell(v: Any) -> str:
    if isinstance(v, (list, tuple)):
        if all(isinstance(x, int) for x in v):
            return ",".join(str(x) for x in v)
        return json.dumps(_jsonable(v), separators=(",", ":"))
    if isinstance(v, dict):
        return json.dumps(_jsonable(v), separators=(",", ":"), sort_keys=True)
    if isinstance(v, bool):
        return "true" if v else "false"
    return "" if v is None else str(v)


def to_csv(report: Mapping[str, Any]) -> str:
    """One row per result.  Betti-shaped results use ``i,lambda,rank,degree``."""
    rows = list(report.get("results", []))
    if rows and all(set(BETTI_COLUMNS) <= set(r) for r in rows):
        columns = list(BETTI_COLUMNS)
    elif not rows:
        columns = list(BETTI_COLUMNS)
    else:
        columns = []
        for r in rows:
            columns.extend(k for k in r if k not in columns)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for r in rows:
        writer.writerow([_cell(r.get(c)) for c in columns])
    return buf.getvalue()


def to_text(report: Mapping[str, Any]) -> str:
    lines = []
    if "command" in report:
        lines.append(f"command: {report['command']}")
    if "config" in report:
        cfg = report["config"]
        lines.append("config: " + " ".join(f"{k}={_cell(v)}" for k, v in cfg.items()))
    if report.get("summary"):
        for k, v in report["summary"].items():
            lines.append(f"{k}: {_cell(v)}")
    results = report.get("results", [])
    lines.append(f"results ({len(results)}):")
    for r in results:
        lines.append("  " + " ".join(f"{k}={_cell(v)}" for k, v in r.items()))
    violations = report.get("violations", [])
    lines.append(f"violations ({len(violations)}):")
    for v in violations:
        lines.append("  " + " ".join(f"{k}={_cell(x)}" for k, x in v.items()))
    if report.get("runtime_ms") is not None:
        lines.append(f"runtime_ms: {report['runtime_ms']}")
    return "\n".join(lines) + "\n"


def emit_report(report: Mapping[str, Any], fmt: str = "json") -> bytes:
    if fmt == "json":
        text = to_json(report) + "\n"
    elif fmt == "csv":
        text = to_csv(report)
    elif fmt == "text":
        text = to_text(report)
    else:
        raise ValueError(f"unknown format {fmt!r}")
    return text.encode("utf-8")


def betti_rows(entries, d: int) -> list[dict]:
    """``(i, lam, rank)`` triples to result rows, sorted by degree, lam, i."""
    rows = [
        {"i": i, "lambda": list(lam), "rank": r, "degree": sum(lam) // d}
        for i, lam, r in entries
    ]
    rows.sort(key=lambda r: (r["degree"], r["lambda"], r["i"]))
    return rows
