from __future__ import annotations

import csv
import json

import pytest

from wreathcover.cli import main
from wreathcover.report import PROVENANCES, SCHEMA_VERSION


def _run(tmp_path, *args):
    out = tmp_path / "r.json"
    code = main([*args, "--out", str(out)])
    doc = json.loads(out.read_text()) if out.exists() else None
    return code, doc, out


def _numbers(node):
    """Yield every {value/lower, provenance} leaf."""
    if isinstance(node, dict):
        if "provenance" in node:
            yield node
            return
        for v in node.values():
            yield from _numbers(v)
    elif isinstance(node, list):
        for v in node:
            yield from _numbers(v)


def _bare_numbers(node, path="results"):
    if isinstance(node, dict):
        if "provenance" in node:
            return []
        return [p for k, v in node.items() for p in _bare_numbers(v, f"{path}.{k}")]
    if isinstance(node, list):
        return [p for i, v in enumerate(node) for p in _bare_numbers(v, f"{path}[{i}]")]
    if isinstance(node, (int, float)) and not isinstance(node, bool):
        return [path]
    return []


def test_sigma_formula_report(tmp_path):
    code, doc, _ = _run(tmp_path, "sigma-formula", "--n", "30", "--m", "2")
    assert code == 0 and doc["schema_version"] == SCHEMA_VERSION
    assert doc["results"]["total"]["provenance"] == "formula"
    assert all(x["provenance"] in PROVENANCES for x in _numbers(doc["results"]))


@pytest.mark.parametrize("args", [
    ("sigma-formula", "--n", "30", "--m", "2"),
    ("sigma-exact", "--group", "S4"),
    ("omega-exact", "--group", "A5"),
    ("verify-covering", "--n", "30", "--m", "2", "--trials", "20"),
    ("lll-check", "--n", "48", "--m", "2"),
])
def test_every_number_has_provenance(tmp_path, args):
    code, doc, _ = _run(tmp_path, *args)
    assert code == 0
    assert _bare_numbers(doc["results"]) == []


def test_same_seed_same_bytes(tmp_path):
    a = tmp_path / "a.json"
    b = tmp_path / "b.json"
    args = ["verify-covering", "--n", "30", "--m", "3", "--trials", "30", "--seed", "7"]
    assert main(args + ["--out", str(a)]) == 0
    assert main(args + ["--out", str(b), "--budget-secs", "600"]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_small_degree_is_a_finding(tmp_path):
    code, doc, _ = _run(tmp_path, "verify-covering", "--n", "6", "--m", "2", "--exhaustive")
    assert code == 2
    assert doc["findings"] and not doc["passed"]


def test_exhaustive_pi_and_intersections(tmp_path):
    assert _run(tmp_path, "verify-pi", "--n", "6", "--m", "2", "--exhaustive")[0] == 0
    assert _run(tmp_path, "count-intersections", "--n", "6", "--m", "2", "--exhaustive")[0] == 0


def test_lll_exit_codes(tmp_path):
    assert _run(tmp_path, "lll-check", "--n", "48", "--m", "2")[0] == 0
    code, doc, _ = _run(tmp_path, "lll-check", "--n", "60", "--m", "2")
    assert code == 2 and doc["findings"]


def test_ratio_scan_writes_csv(tmp_path):
    code, doc, out = _run(tmp_path, "ratio-scan", "--m", "3", "--n-max", "96")
    assert code == 0
    rows = list(csv.reader(out.with_suffix(".csv").open()))
    assert rows[0] == ["n", "ratio", "ratio_approx", "certified"] and len(rows) == 9


@pytest.mark.parametrize("args", [
    ("verify-covering", "--n", "8"),
    ("sigma-exact", "--group", "C6"),
    ("sigma-exact", "--group", "G6_2"),
    ("sigma-exact", "--group", "Q8"),
    ("sigma-formula", "--n", "31", "--m", "2"),
    ("verify-covering", "--n", "30", "--m", "2", "--trials", "0"),
])
def test_usage_and_resource_errors(tmp_path, args, capsys):
    code, doc, _ = _run(tmp_path, *args)
    assert code == 1 and doc is None
    assert "error" in capsys.readouterr().err


def test_stdout_when_no_out(capsys):
    assert main(["sigma-formula", "--n", "30", "--m", "1"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["results"]["total"]["value"] == 100522847
