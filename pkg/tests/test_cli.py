import json
import pathlib
import subprocess
import sys

import pytest

from zetacf.cli import main

GOLDEN = json.loads((pathlib.Path(__file__).parent / "golden" / "cli.json").read_text())


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.mark.parametrize("name", sorted(GOLDEN))
def test_golden_json(name, capsys):
    case = GOLDEN[name]
    code, out, _ = run(capsys, *case["argv"], "--json")
    assert code == 0
    assert json.loads(out) == case["output"]


def test_family_text(capsys):
    code, out, _ = run(capsys, "family", "--id", "1", "--k", "2")
    assert code == 0
    assert out.strip() == "zeta(4)+4*zeta(2) = [[8,2*n^4-4*n^3+10*n^2-8*n+3],[-1,-n^8]]"


def test_euler_text(capsys):
    code, out, _ = run(capsys, "euler", "--f", "n^3/(n+1)", "--z", "1")
    assert (code, out.strip()) == (0, "[[0,2*n^4-2*n^3+2*n-1],[2,-n^8-2*n^7]]")


def test_multiplier_text(capsys):
    code, out, _ = run(capsys, "multiplier", "--P", "2x-1", "--k", "2", "--sign", "plus")
    assert code == 0
    assert out.splitlines() == ["sum = 2-zeta(2)", "cf  = [[0,2*n^2-2*n+3],[1,-n^4]]"]


def test_bm_iterate_text(capsys):
    code, out, _ = run(capsys, "bm-iterate", "--cf", "[[0,1],[1,n^2]]", "--steps", "3")
    assert code == 0
    assert out.splitlines() == [
        "0: [[0,1],[1,n^2]]",
        "1: [[1,3],[-1,n^2]]  (r = n-1, d = -1)",
        "2: [[1/2,5],[1,n^2]]  (r = n-2, d = -4)",
        "3: [[5/6,7],[-1,n^2]]  (r = n-3, d = -9)",
    ]


def test_eval_modes(capsys):
    code, out, _ = run(capsys, "eval", "--cf", "[[0,1],[1,n^2]]", "--exact", "--depth", "5")
    assert (code, out.strip()) == (0, "47/60")
    code, out, _ = run(capsys, "eval", "--cf", "[[5/6,7],[-1,n^2]]", "--depth", "2000", "--prec", "20", "--json")
    assert code == 0
    assert json.loads(out)["value"].startswith("0.6931471805599453094")
    code, out, _ = run(capsys, "eval", "--cf", "[[0,2n-1],[2,n^4]]", "--fast", "--json")
    assert code == 0 and float(json.loads(out)["value"]) == pytest.approx(1.6449, abs=1e-3)


def test_bm_check_and_solve(capsys):
    code, out, _ = run(capsys, "bm", "--cf", "[[0,1],[1,n^2]]", "--r", "n", "--check", "30", "--json")
    assert code == 0 and json.loads(out)["relation_holds"] is True
    code, out, _ = run(capsys, "bm-solve", "--cf", "[[0,n^4+(n-1)^4],[1,-n^8]]", "--deg-bound", "4")
    assert (code, out.strip()) == (0, "no accelerator with constant d")


def test_parse_and_catalog(capsys):
    code, out, _ = run(capsys, "parse", "--cf", "[[0,1,8(n-1)],[1,(2n-1)^4]]", "--json")
    assert code == 0 and json.loads(out)["bidegree"] == [1, 4]
    code, out, _ = run(capsys, "catalog", "--sign", "minus", "--json")
    assert code == 0
    assert [e["smallest_k"] for e in json.loads(out)["entries"]] == [[3, 5, 7], [5, 9, 13], [2, 8, 14]]


def test_psi_value(capsys):
    code, out, _ = run(capsys, "psi", "--r", "1", "--m", "4", "--order", "1", "--shift", "2", "--depth", "2000",
                       "--prec", "20", "--json")
    payload = json.loads(out)
    assert code == 0
    assert abs(float(payload["value"]) - float(payload["hurwitz"])) < 1e-8


@pytest.mark.parametrize(
    "argv,code",
    [
        ([], 2),
        (["nope"], 2),
        (["parse", "--cf", "[[0,2n-1],[2,n^]]"], 2),
        (["parse", "--cf", "[[0,1],[0,n]]"], 2),
        (["family", "--id", "9", "--k", "1"], 2),
        (["family", "--id", "1", "--k", "0"], 2),
        (["multiplier", "--P", "2x-1", "--k", "3"], 2),
        (["eval", "--cf", "[[0,1],[1,-1]]", "--exact", "--depth", "2"], 3),
        (["eval", "--cf", "[[0,1],[1,n^2]]", "--exact", "--depth", "5000"], 2),
        (["bm", "--cf", "[[0,1],[1,n^2]]", "--r", "n-2"], 3),
        (["bm-iterate", "--cf", "[[0,n^4+(n-1)^4],[1,-n^8]]", "--deg-bound", "2"], 3),
        (["psi", "--r", "1", "--m", "5"], 3),
        (["euler", "--f", "n-3"], 3),
    ],
)
def test_exit_codes(argv, code, capsys):
    assert main(argv) == code


def test_env_precision(monkeypatch, capsys):
    monkeypatch.setenv("ZETACF_PREC", "12")
    code, out, _ = run(capsys, "eval", "--cf", "[[5/6,7],[-1,n^2]]", "--json")
    assert code == 0 and json.loads(out)["prec"] == 12
    monkeypatch.setenv("ZETACF_PREC", "3")
    assert main(["eval", "--cf", "[[5/6,7],[-1,n^2]]"]) == 2


def test_verify_exit_and_report(tmp_path, capsys):
    out = tmp_path / "report.json"
    code, text, _ = run(capsys, "verify", "--suite", "multiplier", "--out", str(out))
    assert code == 0
    report = json.loads(out.read_text())
    assert report["ok"] and report["counts"]["fail"] == 0
    ids = [e["id"] for e in report["entries"]]
    assert ids == sorted(ids)
    assert text.strip().endswith("passed, 0 failed, 0 skipped")


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "zetacf", "family", "--id", "6", "--k", "1"],
                         capture_output=True, text=True)
    assert res.returncode == 0
    assert res.stdout.strip() == "3*zeta(3)+16*log(2) = [[16,5*n^2-5*n+3],[-4,n^6]]"
