import json
import subprocess
import sys

import pytest

from stevin.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_root_prints_digits(capsys):
    assert run(capsys, "root", "x^2-2", "--bracket", "1", "2", "--digits", "6") == (0, "1.414213\n", "")


def test_hyper_sign(capsys):
    assert run(capsys, "hyper", "sign", "(-1)^n/n", "--filter", "point:0")[:2] == (0, "POSITIVE\n")
    assert run(capsys, "hyper", "sign", "(-1)^n/n", "--filter", "point:-1")[1] == "NEGATIVE\n"
    assert run(capsys, "hyper", "sign", "(-1)^n/n")[1] == "UNDECIDED\n"


def test_compare_json(capsys):
    code, out, _ = run(capsys, "compare", "x^2-2", "--bracket", "1", "2", "--digits", "10", "--json")
    report = json.loads(out)
    assert code == 0
    assert (report["stevin_iterations"], report["bisect_iterations"], report["exact_hit"]) == (10, 34, False)
    assert list(report)[:2] == ["command", "input"]


@pytest.mark.parametrize(
    "argv, text",
    [
        (["derive", "x^3-2*x", "1"], "1"),
        (["order", "i^3 + 5*i^5"], "FINITE(3)"),
        (["hyper", "classify", "(2n+1)/n"], "APPRECIABLE(st=2)"),
        (["hyper", "st", "(2n+1)/n", "--digits", "3"], "2.000"),
        (["hyper", "los", "(1/n+n)*(1/n)", "(1/n)^2+1"], "HOLDS"),
        (["render", "1/3", "--digits", "5"], "0.33333…;… (digit 3 at every unlimited rank)"),
        (["ivt", "x", "--bracket", "-1", "1"], "[0, 0] after 1 halvings (exact root)"),
    ],
)
def test_human_output(capsys, argv, text):
    code, out, _ = run(capsys, *argv)
    assert (code, out.splitlines()[0]) == (0, text)


def test_ivt_reports_grid_straddle(capsys):
    code, out, _ = run(capsys, "ivt", "x-1/2", "--bracket", "0", "9/10", "--tol", "1/1000", "--rank", "1", "--json")
    report = json.loads(out)
    assert report["iterations"] == 10 and report["stability"]["status"] == "STRADDLES_GRID"
    assert report["stability"]["grid_point"] == "1/2"


def test_render_json(capsys):
    code, out, _ = run(capsys, "render", "(10^n-1)/(3*10^n)", "--digits", "5", "--json", "--filter", "point:0")
    assert json.loads(out) == {
        "command": "render",
        "oracle": "point:0",
        "input": {"generator": "(10^n-1)/(3*10^n)"},
        "digits": 5,
        "result": "0.33333",
        "pattern": "UP_TO_H_THEN(3, 0)",
    }


def test_math_errors_exit_1(capsys):
    code, out, err = run(capsys, "root", "x^2+1", "--bracket", "1", "2", "--json")
    assert code == 1 and json.loads(out)["error"] == "NoSignChange"
    code, _, err = run(capsys, "hyper", "st", "n")
    assert code == 1 and "NotFinite" in err


@pytest.mark.parametrize(
    "argv",
    [
        [],
        ["root", "x^2-2"],
        ["root", "y^2-2", "--bracket", "1", "2"],
        ["root", "x^2-2", "--bracket", "1", "2", "--digits", "0"],
        ["hyper", "sign", "n", "--filter", "ultra"],
        ["hyper", "los", "n"],
        ["order"],
        ["bogus"],
    ],
)
def test_usage_errors_exit_2(capsys, argv):
    assert run(capsys, *argv)[0] == 2


def test_digits_from_environment(capsys, monkeypatch):
    monkeypatch.setenv("STEVIN_DIGITS", "3")
    assert run(capsys, "root", "x^2-2", "--bracket", "1", "2")[1] == "1.414\n"
    monkeypatch.setenv("STEVIN_DIGITS", "-3")
    assert run(capsys, "root", "x^2-2", "--bracket", "1", "2")[0] == 2


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "stevin", "root", "x^2-2", "--bracket", "1", "2", "--digits", "6"],
        capture_output=True,
        text=True,
    )
    assert (proc.returncode, proc.stdout) == (0, "1.414213\n")
