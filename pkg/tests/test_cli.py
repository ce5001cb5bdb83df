from __future__ import annotations

import json
import subprocess
import sys

import pytest

from turanlab.cli import run, table1_report
from turanlab.constructions import ConstructionKind, construct
from turanlab.h3core import format_h3, parse_h3
from turanlab.ramsey import parse_coloring
from turanlab.store import DataIntegrityError, ResultStore


@pytest.fixture(autouse=True)
def store(tmp_path, monkeypatch):
    path = tmp_path / "store.jsonl"
    monkeypatch.setenv("TURANLAB_STORE", str(path))
    return path


def out_json(capsys):
    return json.loads(capsys.readouterr().out.strip().splitlines()[-1])


def test_construct_with_check(capsys):
    assert run(["construct", "--kind", "balloon", "--n", "9", "--check"]) == 0
    lines = capsys.readouterr().out.splitlines()
    H = parse_h3("\n".join(lines[:-1]) + "\n")
    assert len(H) == 21
    assert all(json.loads(lines[-1])["checks"].values())


def test_detect_exit_codes(tmp_path, capsys):
    k8 = tmp_path / "k8.h3"
    k8.write_text(format_h3(construct(ConstructionKind.complete(8))))
    assert run(["detect", str(k8), "--pattern", "p4", "--expect-free"]) == 1
    assert capsys.readouterr().out.startswith("FOUND ")
    sk = tmp_path / "sk.h3"
    sk.write_text(format_h3(construct(ConstructionKind.sk(10))))
    assert run(["detect", str(sk), "--pattern", "p4,m3", "--expect-free"]) == 0
    assert capsys.readouterr().out.strip() == "FREE"


def test_malformed_input_reports_line(tmp_path, capsys):
    bad = tmp_path / "bad.h3"
    bad.write_text("h3 5 2\n0 1 2\n0 1 9\n")
    assert run(["detect", str(bad), "--pattern", "p4"]) == 2
    assert "line 3" in capsys.readouterr().err


def test_usage_errors(capsys):
    assert run(["bogus"]) == 2
    assert run(["turan", "--family", "q9", "--n", "5"]) == 2
    assert run(["turan", "--family", "p4", "--n", "5", "--mode", "sideways"]) == 2
    assert run(["ramsey-verify", "--r", "7"]) == 2
    assert run(["ramsey-exhaustive", "--n", "8", "--r", "3", "--family", "p4"]) == 2


def test_turan_json_and_cache(store, capsys):
    assert run(["turan", "--family", "p4", "--n", "7", "--emit", "json"]) == 0
    rec = out_json(capsys)
    assert rec["value"] == 20 and rec["complete"] is True
    assert list(rec) == ["family", "n", "order", "connected", "required", "value", "complete", "extremal",
                         "nodes", "elapsed_ms", "prunes"]
    assert run(["turan", "--family", "p4", "--n", "7", "--emit", "json"]) == 0
    again = out_json(capsys)
    assert again == rec  # served from the store
    assert len(store.read_text().splitlines()) == 1


def test_turan_modes(capsys):
    assert run(["turan", "--family", "p4", "--n", "7", "--mode", "decide:21"]) == 1
    assert capsys.readouterr().out.startswith("NONE")
    assert run(["turan", "--family", "p4", "--n", "7", "--mode", "decide:20", "--emit", "json"]) == 0
    assert out_json(capsys)["exists"] is True
    assert run(["turan", "--family", "m2", "--n", "6", "--order", "2", "--emit", "json"]) == 0
    assert out_json(capsys)["order"] == 2


def test_turan_budget_exit(capsys):
    assert run(["turan", "--family", "p4", "--n", "8", "--budget", "0.01", "--emit", "json"]) == 3
    assert out_json(capsys)["complete"] is False


def test_ramsey_commands(tmp_path, capsys):
    out = tmp_path / "c.txt"
    assert run(["ramsey-lb", "--r", "3", "--out", str(out)]) == 0
    c = parse_coloring(out.read_text())
    assert (c.n, c.r) == (8, 3)
    capsys.readouterr()
    assert run(["ramsey-verify", "--r", "3"]) == 3
    capsys.readouterr()
    assert run(["ramsey-verify", "--r", "4", "--pin-paper-values", "--emit", "json"]) == 0
    rep = out_json(capsys)
    assert rep["verdict"] == 10 and "ex^(3)(10)" in rep["paper_pinned_inputs"]
    assert run(["ramsey-exhaustive", "--n", "5", "--r", "4", "--family", "p2"]) == 0
    assert run(["ramsey-exhaustive", "--n", "4", "--r", "4", "--family", "p2"]) == 1


def test_search_values_replace_pinned_ones(capsys):
    assert run(["turan", "--family", "p4", "--n", "8"]) == 0
    capsys.readouterr()
    assert run(["ramsey-verify", "--r", "2"]) == 0
    text = capsys.readouterr().out
    assert "R(P4; 2) = 8" in text and "search-certified inputs: ex^(1)(8)" in text


def test_lemma_reports(capsys):
    assert run(["lemma-verify", "--which", "five", "--emit", "json"]) == 0
    assert out_json(capsys)["max_sum"] == 13
    assert run(["lemma-verify", "--which", "split", "--emit", "json"]) == 0
    assert out_json(capsys)["passed"]


def test_table1(capsys):
    rows, text = table1_report(None)
    assert [r["n"] for r in rows] == list(range(8, 15))
    assert [rows[4][k] for k in ("starplus", "sp", "sk", "compact_balloon", "balloon")] == [56, 42, 38, 43, 39]
    assert [rows[5][k] for k in ("starplus", "sp", "sk", "compact_balloon", "balloon")] == [67, 47, 42, 52, 47]
    assert run(["table1"]) == 0
    assert "56" in capsys.readouterr().out


def test_store_rejects_conflicts(store):
    rec = {"kind": "turan", "family": "p4", "n": 7, "order": 1, "value": 20, "complete": True, "extremal": []}
    store.write_text(json.dumps(rec) + "\n" + json.dumps({**rec, "value": 21}) + "\n")
    with pytest.raises(DataIntegrityError):
        ResultStore(store)
    assert run(["table1"]) == 2


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "turanlab", "construct", "--kind", "sk", "--n", "9"],
                          capture_output=True, text=True, check=True)
    assert proc.stdout.startswith("h3 9 26")
