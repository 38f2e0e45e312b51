import io
import json
import os

import pytest

from hilbchart.cli import main

FIX = os.path.join(os.path.dirname(__file__), "..", "fixtures")


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def fx(name):
    return os.path.join(FIX, name)


def test_chart_document():
    code, out, _ = run("chart", "--spec", fx("a1-n2.json"))
    doc = json.loads(out)
    assert code == 0 and doc["nonzero_generators"] == 2
    assert doc["gens_section"][2:] == ["U[1][1][1]", "U[1][2][1] - 1"]


def test_outputs_are_byte_identical():
    a = run("--format", "json", "gb", "--spec", fx("mutation-n2.json"))
    b = run("--format", "json", "gb", "--spec", fx("mutation-n2.json"))
    assert a == b and a[0] == 0


def test_seed_does_not_change_results():
    a = run("--seed", "1", "points", "--p", "2", "--chart", fx("mutation-n2.json"), "--list")
    b = run("--seed", "99", "points", "--p", "2", "--chart", fx("mutation-n2.json"), "--list")
    assert a == b


def test_nf_and_eliminate():
    code, out, _ = run("nf", "--spec", fx("a1-n2.json"), "--poly", "U[1][2][1]^2 + U[1][1][1]")
    assert code == 0 and json.loads(out)["normal_form"] == "1"
    code, out, _ = run("eliminate", "--spec", fx("punctured-line-n2.json"), "--keep", "U[1][1][2],U[1][2][2],U[2][2][1]")
    assert code == 0 and json.loads(out)["generators"] == ["U[1][1][2]*U[2][2][1] - 1"]


def test_freecheck_exit_codes():
    assert run("freecheck", "--spec", fx("a2-n2.json"))[0] == 0
    assert run("freecheck", "--spec", fx("punctured-line-n2.json"), "--free", "U[1][1][2]", "U[1][2][2]")[0] == 2
    assert run("freecheck", "--spec", fx("punctured-line-n2.json"))[0] == 1


def test_points_modes():
    code, out, _ = run("points", "--p", "3", "--chart", fx("punctured-line-n2.json"), "--mode", "compare")
    doc = json.loads(out)
    assert code == 0 and doc["equal"] and doc["count"] == 6
    code, out, _ = run("points", "--p", "2", "--chart", fx("idempotent-n1.json"), "--mode", "semantic", "--list")
    assert json.loads(out)["points"] == ["U[1][1][1]=0", "U[1][1][1]=1"]
    code, out, _ = run("--format", "text", "points", "--p", "2", "--chart", fx("zero-chart-n2.json"), "--mode", "symbolic")
    assert code == 0 and "count: 0" in out


def test_resource_exits():
    assert run("points", "--p", "2", "--chart", fx("a3-n4-budget.json"))[0] == 3
    assert run("gb", "--spec", fx("a3-n4-budget.json"))[0] == 3


def test_parse_error_exit():
    code, _, err = run("chart", "--spec", fx("bad-relation.json"))
    assert code == 1 and "column 8" in err and "^" in err
    assert run("nf", "--spec", fx("a1-n2.json"), "--poly", "U[9][9][9]")[0] == 1
    assert run("chart", "--spec", fx("no-such-file.json"))[0] == 1
    assert run("bogus")[0] == 1


def test_line():
    code, out, _ = run("line", "--s-gens", "X", "X-1", "--n", "2")
    assert code == 0 and json.loads(out)["inverted"] == ["c2", "-c1 + c2 + 1"]


def test_iarrobino_table():
    code, out, _ = run("--format", "text", "iarrobino", "--m", "3", "--scan-d", "20")
    lines = out.splitlines()
    assert code == 0 and lines[0].split() == ["d", "s", "n", "B", "bound", "mn", "signal"]
    assert "first_signal_d: 7" in out
    code, out, _ = run("iarrobino", "--m", "3", "--n", "28")
    doc = json.loads(out)
    assert doc["rows"][0]["bound"] == 56 and doc["reducibility_signal"] is False


def test_commutant():
    code, out, _ = run("commutant", "--tuple", fx("companion-n3.json"))
    assert code == 0 and json.loads(out)["commutant_dimension"] == 3
    code, out, _ = run("commutant", "--tuple", fx("identity-n2.json"))
    assert code == 2 and json.loads(out)["cyclic"] is False


@pytest.mark.parametrize("suite", ["prop7-3", "generic-shape", "oracle", "commutant", "mutation"])
def test_verify_suites_pass(suite):
    code, out, _ = run("verify", "--suite", suite)
    assert code == 0 and json.loads(out)["passed"]


def test_verify_failure_exit():
    code, out, _ = run("verify", "--suite", "i1-in-i3")
    assert code == 2 and not json.loads(out)["passed"]
    assert run("verify", "--suite", "nope")[0] == 1
