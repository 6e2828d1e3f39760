from __future__ import annotations

import json
import subprocess
import sys

import pytest

from clusterfold.cli import SuiteConfig, run, run_suites
from clusterfold.repcore import catalog_rep, render_rep


def test_char_s1(capsys):
    assert run(["char", "--module", "S1", "--word", "213213"]) == 0
    out = capsys.readouterr().out.split("\n")
    assert out[0] == "t2 + t5"
    assert out[1] == "D[1][2]"


def test_char_from_file_with_decomposable_module(tmp_path, capsys):
    from clusterfold.repcore import direct_sum

    f = tmp_path / "m.txt"
    f.write_text(render_rep(direct_sum([catalog_rep("S1"), catalog_rep("P2")])))
    assert run(["char", "--module", str(f)]) == 0
    out = capsys.readouterr().out
    assert "D[1][2]*D[12][34]" in out


def test_char_rejects_non_module(tmp_path, capsys):
    f = tmp_path / "bad.txt"
    f.write_text("dim: 1 1 0\nalpha: [1]\nalpha*: [1]\n")
    assert run(["char", "--module", str(f)]) == 1
    f.write_text("dim: 1 1\n")
    assert run(["char", "--module", str(f)]) == 2


def test_usage_errors():
    assert run(["graph", "--bogus"]) == 2
    assert run([]) == 2
    assert run(["char", "--module", "S9"]) == 2
    assert run(["positivity", "--matrix", "/nonexistent/m.txt"]) == 2
    assert run(["mutate", "--object", "S1,S2,S3", "--slot", "S1"]) == 2


def test_positivity_identity(tmp_path, capsys):
    f = tmp_path / "id.txt"
    f.write_text("1 0 0 0\n0 1 0 0\n0 0 1 0\n0 0 0 1\n")
    assert run(["positivity", "--matrix", str(f)]) == 0
    assert "not totally positive" in capsys.readouterr().out
    g = tmp_path / "tp.txt"
    g.write_text("1 3 3 1\n0 1 2 1\n0 0 1 1\n0 0 0 1\n")
    assert run(["positivity", "--matrix", str(g), "--criterion", "twelve", "--json"]) == 0
    assert json.loads(capsys.readouterr().out)["totally_positive"] is True


def test_catalog_json_is_deterministic(capsys):
    assert run(["catalog", "--json"]) == 0
    first = capsys.readouterr().out
    assert run(["catalog", "--json"]) == 0
    assert capsys.readouterr().out == first
    data = json.loads(first)
    assert [m["minor"] for m in data["modules"]][:3] == ["D[1][2]", "D[2][3]", "D[3][4]"]


def test_graph_exports(tmp_path):
    dot, js = tmp_path / "g.dot", tmp_path / "g.json"
    assert run(["graph", "--dot", str(dot), "--json", str(js)]) == 0
    assert dot.read_text().count("--") == 21
    assert len(json.loads(js.read_text())["vertices"]) == 14


def test_mutate_renders_sequences(capsys):
    assert run(["mutate", "--object", "SOC2,U32,U12", "--slot", "U32"]) == 0
    out = capsys.readouterr().out
    assert "0 -> U32 -> SOC2 -> S1 -> 0" in out
    assert "0 -> S1 -> P3 -> U32 -> 0" in out


def test_fold_graph(capsys):
    assert run(["fold", "--graph"]) == 0
    assert capsys.readouterr().out.count("--") == 6
    assert run(["fold", "--graph", "--json"]) == 0
    assert len(json.loads(capsys.readouterr().out)["vertices"]) == 6


@pytest.mark.parametrize("suite", ["ext", "char", "exchange", "fold"])
def test_verify_suites(suite):
    assert run(["verify", "--suite", suite]) == 0


def test_verify_positivity_small():
    (res,) = run_suites(["positivity"], SuiteConfig(random_samples=300, positive_samples=10))
    assert res.ok


def test_module_entry_point():
    out = subprocess.run([sys.executable, "-m", "clusterfold", "char", "--module", "P2"],
                         capture_output=True, text=True, check=True)
    assert out.stdout.split() == ["t1*t2*t3*t4", "D[12][34]"]
