import io
import json
import os
import subprocess
import sys

import pytest

from koszul_lab.cli import run
from koszul_lab.report import betti_rows, emit_report, to_csv


def cli(*argv):
    buf = io.BytesIO()
    code = run(list(argv), stdout=buf)
    return code, buf.getvalue()


def cli_json(*argv):
    code, out = cli(*argv, "--no-timing")
    return code, json.loads(out)


# -- emit_report --------------------------------------------------------------

def test_emit_betti_report():
    rows = betti_rows([(2, (3, 9), 1)], 4)
    rep = {"results": rows, "violations": [{"i": 2, "lambda": [3, 9]}]}
    data = json.loads(emit_report(rep, "json"))
    assert data["results"] == [{"i": 2, "lambda": [3, 9], "rank": 1, "degree": 3}]
    assert data["violations"] == [{"i": 2, "lambda": [3, 9]}]
    csv_text = emit_report(rep, "csv").decode()
    assert csv_text.splitlines() == ["i,lambda,rank,degree", '2,"3,9",1,3']


def test_emit_empty_report():
    assert json.loads(emit_report({}, "json")) == {"results": [], "violations": []}
    assert to_csv({}) == "i,lambda,rank,degree\n"
    assert b"violations (0)" in emit_report({}, "text")
    with pytest.raises(ValueError):
        emit_report({}, "yaml")


def test_key_order_fixed():
    rep = {"runtime_ms": 1, "violations": [], "command": "x", "results": [], "config": {}}
    assert list(json.loads(emit_report(rep))) == ["command", "config", "results", "violations", "runtime_ms"]


# -- exit codes and shapes ----------------------------------------------------

def test_help_exits_zero(capsys):
    assert run(["--help"]) == 0
    assert "koszul-scan" in capsys.readouterr().out


def test_usage_errors_exit_two(capsys):
    assert run(["bogus"]) == 2
    assert run(["member", "-n", "2", "-d", "2", "--bad-flag"]) == 2
    assert cli("member", "-n", "2", "-d", "2")[0] == 2  # missing --lambda
    assert cli("member", "-n", "2", "-d", "2", "-a", "3,0", "--lambda", "2,2")[0] == 2
    assert cli("betti-ideal", "-n", "2", "-d", "2", "-a", "1,1", "--lambda", "1,1")[0] == 2
    assert run(["groebner", "-n", "2", "-d", "2", "--field", "p:4"]) == 2
    assert cli("koszul-scan", "-n", "2", "-d", "2", "--max-degree", "6")[0] == 2
    assert cli("homology-lemma", "-n", "9")[0] == 2
    assert "error" in capsys.readouterr().err


def test_two_full_report():
    code, data = cli_json("two-full", "-n", "3", "-d", "3", "-a", "1,1,1", "--format", "json")
    assert code == 0
    assert data["results"] == [{"two_full": True, "missing": []}]
    assert data["config"]["a"] == [1, 1, 1]
    code, data = cli_json("two-full", "-n", "2", "-d", "4", "-a", "0,4")
    assert data["results"][0] == {"two_full": False, "missing": [[0, 8], [1, 7]]}


def test_groebner_counterexample_exit_one():
    code, data = cli_json("groebner", "-n", "3", "-d", "3", "-a", "1,1,1")
    assert code == 1
    cubes = [v["cubic"] for v in data["violations"]]
    assert [[0, 1, 2], [1, 0, 2], [3, 0, 0]] in cubes
    v = data["violations"][cubes.index([[0, 1, 2], [1, 0, 2], [3, 0, 0]])]
    assert v["minimal"] == [[0, 0, 3], [2, 0, 1], [2, 1, 0]]


def test_groebner_pass_exit_zero():
    code, data = cli_json("groebner", "-n", "2", "-d", "4", "-a", "1,3", "--verify-oracles")
    assert code == 0 and data["summary"]["is_groebner"]
    code, data = cli_json("groebner", "-n", "2", "-d", "4", "-a", "none")
    assert code == 0 and data["config"]["a"] is None


def test_betti_commands():
    code, data = cli_json("betti-ideal", "-n", "2", "-d", "4", "-a", "2,2", "--lambda", "3,9", "--verify-oracles")
    assert code == 0  # a cubic generator is expected for this puncture
    assert data["summary"]["homology"]["0"] == 1
    code, data = cli_json("betti-field", "-n", "2", "-d", "4", "-a", "2,2", "--lambda", "3,9")
    assert code == 1
    assert data["results"] == [{"i": 2, "lambda": [3, 9], "rank": 1, "degree": 3}]
    assert data["violations"] == [{"i": 2, "lambda": [3, 9]}]


def test_koszul_scan_cli():
    code, data = cli_json("koszul-scan", "-n", "2", "-d", "4", "-a", "2,2", "--max-degree", "3")
    assert code == 1
    assert {"i": 2, "lambda": [3, 9]} in data["violations"]
    code, data = cli_json("koszul-scan", "-n", "3", "-d", "3", "-a", "1,1,1", "--max-degree", "3",
                          "--verify-oracles", "--jobs", "1")
    assert code == 0 and data["violations"] == []
    assert data["summary"]["regularity"] == 0


def test_other_commands_run():
    assert cli_json("points", "-n", "2", "-d", "2")[1]["results"] == [
        {"point": [0, 2]}, {"point": [1, 1]}, {"point": [2, 0]}]
    code, data = cli_json("member", "-n", "2", "-d", "4", "-a", "1,3", "--lambda", "1,7")
    assert code == 0 and data["results"][0]["member"] is False
    code, data = cli_json("min-chain", "-n", "2", "-d", "4", "-a", "2,2", "--lambda", "3,9", "--verify-oracles")
    assert code == 0 and data["results"][0]["links"] == [[0, 4], [0, 4], [3, 1]]
    code, data = cli_json("facet-lemmas", "-n", "3", "-d", "3", "-a", "1,1,1", "--lambda", "3,3,3")
    assert code == 0 and data["summary"]["offending_chains"] == 19
    code, data = cli_json("homology-lemma", "-n", "6", "--form", "strong")
    assert code == 0 and data["results"][0]["patterns_checked"] == 147
    code, data = cli_json("homology-lemma", "-n", "8", "--form", "strong")
    assert code == 1
    code, data = cli_json("mv-scan", "-n", "3", "-d", "3", "-a", "1,1,1", "--lambda", "2,2,2")
    assert code == 0 and data["summary"]["gamma_matches"]


def test_unsorted_puncture_flagged():
    code, data = cli_json("two-full", "-n", "3", "-d", "3", "-a", "1,0,2")
    assert data["config"]["sorted_a"] == [0, 1, 2]
    assert data["results"][0]["two_full"] is False


def test_csv_and_text_formats():
    code, out = cli("koszul-scan", "-n", "2", "-d", "4", "-a", "2,2", "--max-degree", "3", "--format", "csv")
    lines = out.decode().splitlines()
    assert lines[0] == "i,lambda,rank,degree"
    assert '2,"3,9",1,3' in lines
    code, out = cli("points", "-n", "2", "-d", "2", "--format", "text")
    assert b"point=1,1" in out


def test_byte_stable_output():
    args = ("koszul-scan", "-n", "3", "-d", "3", "-a", "1,1,1", "--max-degree", "3", "--no-timing")
    one = cli(*args, "--jobs", "1")[1]
    two = cli(*args, "--jobs", "2")[1]
    assert one == two


def test_console_script_subprocess():
    env = dict(os.environ)
    proc = subprocess.run(
        [sys.executable, "-m", "koszul_lab.cli", "two-full", "-n", "3", "-d", "3", "-a", "1,1,1", "-v"],
        capture_output=True, env=env,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["results"] == [{"two_full": True, "missing": []}]
