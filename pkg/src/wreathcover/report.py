"""Structured report documents.

Every number goes out as ``{"value": ..., "provenance": ...}`` where provenance
is one of formula, enumeration, sampled, enclosure.  Rationals are written as
"p/q" strings with a float approximation next to them.  Keys are sorted and no
timing data enters the document, so equal inputs give byte-identical output.
"""

from __future__ import annotations

import csv
import json
import os
import tempfile
from fractions import Fraction
from pathlib import Path

from .intervals import IntervalRational

SCHEMA_VERSION = 1
PROVENANCES = ("formula", "enumeration", "sampled", "enclosure")


def num(value, provenance: str) -> dict:
    if provenance not in PROVENANCES:
        raise ValueError(f"unknown provenance {provenance!r}")
    if isinstance(value, IntervalRational):
        return {
            "lower": _rat(value.lower),
            "upper": _rat(value.upper),
            "approx": float(value.lower),
            "provenance": provenance,
        }
    if isinstance(value, Fraction):
        if value.denominator == 1:
            return {"value": int(value), "provenance": provenance}
        return {"value": _rat(value), "approx": _approx(value), "provenance": provenance}
    if isinstance(value, bool):
        raise TypeError("booleans are verdicts, not numbers")
    return {"value": value, "provenance": provenance}


def _rat(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


def _approx(q: Fraction) -> float | str:
    try:
        return float(q)
    except OverflowError:
        return "overflow"


def document(command: str, config: dict, results: dict, passed: bool, findings: list | None = None) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "config": config,
        "results": results,
        "passed": passed,
        "findings": findings or [],
    }


def dumps(doc: dict) -> str:
    return json.dumps(doc, sort_keys=True, indent=2, default=_fallback) + "\n"


def _fallback(obj):
    if isinstance(obj, Fraction):
        return _rat(obj)
    if isinstance(obj, (set, frozenset)):
        return sorted(obj)
    return str(obj)


def write_atomic(path, text: str) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.")
    with os.fdopen(fd, "w") as fh:
        fh.write(text)
    os.replace(tmp, path)


def write_csv(path, header: list[str], rows: list[list]) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(header)
        w.writerows(rows)
