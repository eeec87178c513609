import json
import subprocess
import sys

import pytest

from permuta.cli import run
from permuta.config import CONFIG
from permuta.report import Item, VerificationReport


def _report(items):
    return VerificationReport(command=["verify", "x"], config={"lattice_cap": 500}, items=items)


def test_verdict_aggregation():
    assert _report([]).verdict is None
    assert _report([Item("a", None)]).verdict is None
    assert _report([Item("a", True), Item("b", None)]).verdict is True
    assert _report([Item("a", True), Item("b", False)]).verdict is False


def test_json_round_trip():
    r = _report([Item("a", True, {"n": 3, "rows": ["x", "y"]}), Item("b", None, {"m": {"k": [1, 2]}})])
    back = VerificationReport.from_json(r.to_json())
    assert back == r
    assert back.to_json() == r.to_json()
    data = json.loads(r.to_json())
    assert data["schema"] == 1 and data["verdict"] is True and data["wall_time"] is None


def test_from_dict_rejects_bad_input():
    data = _report([Item("a", False)]).to_dict()
    with pytest.raises(ValueError):
        VerificationReport.from_dict(data | {"schema": 2})
    with pytest.raises(ValueError):
        VerificationReport.from_dict(data | {"verdict": True})


def test_text_rendering():
    text = _report([Item("a", True, {"rows": ["r1", "r2"]}), Item("b", False), Item("c", None)]).to_text()
    assert "[PASS] a" in text and "[FAIL] b" in text and "[INFO] c" in text
    assert "      r1" in text
    assert "items: 3  graded: 2  passed: 1" in text
    assert text.rstrip().endswith("verdict: false")


def _cli(argv, tmp_path):
    path = tmp_path / "out.json"
    status, report = run([*argv, "--json", str(path)])
    return status, report, (path.read_text() if path.exists() else None)


@pytest.mark.parametrize(
    "argv, status, verdict",
    [
        (["verify", "lemma3.1"], 0, True),
        (["verify", "lemma2.1", "--group", "S(3)"], 0, True),
        (["verify", "thm3.2", "--group", "GL(3,2)"], 0, True),
        (["verify", "lemma6.4", "--group", "S(3)", "--p", "3"], 0, True),
        (["verify", "thm6.5-2", "--group", "D(4)", "--p", "2"], 0, True),
        (["classify", "--group", "D(4)"], 0, None),
        (["radical", "--group", "C(2)", "--p", "2"], 0, True),
        (["magnus", "compare", "x1", "x1^2"], 0, None),
        (["magnus", "expand", "x1 x2 x1^-1 x2^-1", "--deg", "2"], 0, None),
        (["valuation", "3*x1 + 2*x1x2^-1", "--field", "5^1"], 0, None),
    ],
)
def test_cli_commands(argv, status, verdict, tmp_path, capsys):
    got, report, text = _cli(argv, tmp_path)
    out = capsys.readouterr().out
    assert got == status
    assert report.verdict is verdict
    data = json.loads(text)
    assert data["verdict"] is verdict
    # text and JSON agree on verdicts and counts
    assert f"items: {len(data['items'])}" in out
    assert out.count("[PASS]") == sum(it["verdict"] is True for it in data["items"])
    assert out.count("[FAIL]") == sum(it["verdict"] is False for it in data["items"])


def test_cli_outputs(capsys):
    assert run(["magnus", "compare", "x1", "x1^2"])[1].items[0].details["result"] == "less"
    assert run(["magnus", "compare", "e", "x1"])[1].items[0].details["result"] == "less"
    exp = run(["magnus", "expand", "x1 x2 x1^-1 x2^-1", "--deg", "2"])[1]
    assert exp.items[0].details["series"] == "1 + X1X2 - X2X1"
    val = run(["valuation", "3*x1 + 2*x1x2^-1", "--field", "5^1"])[1]
    assert val.items[0].details["valuation"] == "x1 x2^-1"
    rad = run(["radical", "--group", "C(2)", "--p", "2"])[1]
    assert rad.items[0].details["basis"] == [{"0": 1, "1": 1}]
    cls = run(["classify", "--group", "C(1)"])[1]
    assert len(cls.items) == 1
    capsys.readouterr()


def test_false_verdict_exits_two(capsys):
    # M16 has a permutable subgroup that is not normal
    status, report = run(["verify", "lemma3.1", "--group", "M16"])
    capsys.readouterr()
    assert status == 2 and report.verdict is False


@pytest.mark.parametrize(
    "argv",
    [
        [],
        ["bogus"],
        ["classify"],
        ["classify", "--group", "X(3)"],
        ["verify", "thm3.2", "--group", "S(3)"],
        ["verify", "thm3.2", "--group", "GL(2,2)"],
        ["verify", "thm6.5-2", "--group", "S(3)", "--p", "2"],
        ["radical", "--group", "S(3)", "--p", "4"],
        ["magnus", "expand", "x1", "--deg", "0"],
        ["magnus", "compare", "x1", "y2"],
        ["valuation", "x1", "--field", "6"],
        ["valuation", "0*x1", "--field", "2"],
    ],
)
def test_errors_exit_one(argv, capsys):
    status, report = run(argv)
    capsys.readouterr()
    assert status == 1 and report is None


def test_cap_flags_apply_and_restore(capsys):
    assert run(["classify", "--group", "S(4)", "--cap-order", "10"])[0] == 1
    assert run(["classify", "--group", "S(4)", "--cap-closure", "10"])[0] == 1
    assert CONFIG.lattice_cap == 500 and CONFIG.closure_cap == 10_000
    status, report = run(["classify", "--group", "S(3)", "--cap-order", "6"])
    assert status == 0 and report.config["lattice_cap"] == 6
    capsys.readouterr()


def test_byte_identical_json(tmp_path, capsys):
    path = tmp_path / "r.json"
    argv = ["verify", "lemma2.1", "--group", "S(4)", "--seed", "3", "--json", str(path)]
    run(argv)
    first = path.read_bytes()
    run(argv)
    assert path.read_bytes() == first
    assert json.loads(first)["config"]["seed"] == 3
    status, report = run(["classify", "--group", "S(3)", "--timing"])
    assert report.wall_time is not None
    capsys.readouterr()


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "permuta", "magnus", "compare", "x1", "x1^2", "--json", "-"],
        capture_output=True,
        text=True,
        check=False,
    )
    assert proc.returncode == 0
    assert "result: \"less\"" in proc.stdout
    payload = proc.stdout[proc.stdout.index("{") :]
    assert json.loads(payload)["items"][0]["details"]["result"] == "less"
