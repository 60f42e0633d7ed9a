import json
import subprocess
import sys

import pytest

from kerov.cli import main


@pytest.fixture(autouse=True)
def isolated_cache(monkeypatch, tmp_path):
    path = tmp_path / "cache.json"
    monkeypatch.setenv("KEROV_CACHE", str(path))
    return path


def run(capsys, *argv):
    try:
        code = main(list(argv))
    except SystemExit as exc:
        code = exc.code
    out = capsys.readouterr()
    return code, out.out, out.err


def test_poly_text(capsys):
    assert run(capsys, "poly", "--k", "3", "--format", "text")[:2] == (0, "R4 + R2\n")


def test_poly_default_is_text(capsys):
    assert run(capsys, "poly", "--k", "4")[1] == "R5 + 5*R3\n"


def test_poly_json(capsys):
    code, out, _ = run(capsys, "poly", "--k", "2", "--format", "json")
    assert code == 0 and json.loads(out) == [{"coeff": "1", "partition": [3]}]


def test_poly_latex(capsys):
    code, out, _ = run(capsys, "poly", "--k", "6", "--format", "latex")
    assert out == "\\Sigma_6 = R_7 + 35R_5 + 35R_3 R_2 + 84R_3\n"


def test_poly_rejects_zero(capsys):
    assert run(capsys, "poly", "--k", "0")[0] == 2


def test_genus(capsys):
    assert run(capsys, "genus", "--k", "5", "--g", "2", "--method", "both")[:2] == (0, "8*R2\n")
    assert run(capsys, "genus", "--k", "4", "--g", "1", "--method", "gr")[:2] == (0, "5*R3\n")
    assert run(capsys, "genus", "--k", "2", "--g", "2", "--method", "gr")[0] == 2
    code, out, _ = run(capsys, "genus", "--k", "7", "--g", "1", "--method", "product", "--format", "json")
    doc = json.loads(out)
    assert code == 0 and doc["degree"] == 6 and doc["method"] == "product"


def test_fit(capsys):
    for basis in ("R", "Q"):
        code, out, _ = run(capsys, "fit", "--g", "1", "--kmax", "10", "--basis", basis)
        doc = json.loads(out)
        assert code == 0 and doc["fitted"] == [{"m": [], "coeff": "1/4"}] and doc["consistent"]


def test_fit_text(capsys):
    code, out, _ = run(capsys, "fit", "--g", "1", "--kmax", "8", "--format", "text")
    assert code == 0 and "fitted: 1/4" in out


def test_fit_underdetermined(capsys):
    code, _, err = run(capsys, "fit", "--g", "2", "--kmax", "6")
    assert code == 5 and "underdetermined" in err


def test_fit_kmax_too_small(capsys):
    assert run(capsys, "fit", "--g", "2", "--kmax", "5")[0] == 2


def test_divcheck(capsys):
    code, out, _ = run(capsys, "divcheck", "--p", "5")
    lines = out.splitlines()
    assert code == 0
    assert lines[0].endswith("= 3*R4 + R2^2 + 2*R2")
    assert lines[1].endswith("= R3")
    assert lines[2].endswith("= 7*R5 + 7*R3*R2 + 17*R3")
    assert lines[-1] == "passed"
    assert run(capsys, "divcheck", "--p", "3")[0] == 0
    assert run(capsys, "divcheck", "--p", "4")[0] == 2


def test_brute(capsys):
    assert run(capsys, "brute", "--k", "4")[:2] == (0, "R5 + 5*R3\nmatch\n")
    assert run(capsys, "brute", "--k", "1")[1].splitlines()[0] == "R2"
    assert run(capsys, "brute", "--k", "12")[0] == 2


def test_eval(capsys):
    assert run(capsys, "eval", "--diagram", "1", "--k", "1")[:2] == (0, "1 = 1\n")
    assert run(capsys, "eval", "--diagram", "2,1", "--k", "1")[:2] == (0, "3 = 3\n")
    code, out, _ = run(capsys, "eval", "--diagram", "4,2,1", "--k", "3")
    lhs, rhs = out.strip().split(" = ")
    assert code == 0 and lhs == rhs
    assert run(capsys, "eval", "--diagram", "1,3", "--k", "1")[0] == 2
    assert run(capsys, "eval", "--diagram", "x", "--k", "1")[0] == 2


def test_bad_jobs(capsys):
    assert run(capsys, "poly", "--k", "3", "--jobs", "0")[0] == 2


@pytest.mark.parametrize("argv", [
    ("poly", "--k", "9", "--format", "json"),
    ("genus", "--k", "9", "--g", "2"),
    ("fit", "--g", "1", "--kmax", "9"),
    ("divcheck", "--p", "7", "--format", "latex"),
])
def test_warm_cache_output_matches_cold(capsys, isolated_cache, argv):
    cold = run(capsys, *argv, "--no-cache")
    first = run(capsys, *argv)
    assert isolated_cache.exists()
    warm = run(capsys, *argv)
    assert cold == first == warm


def test_jobs_do_not_change_output(capsys):
    one = run(capsys, "fit", "--g", "1", "--kmax", "9", "--no-cache")
    two = run(capsys, "fit", "--g", "1", "--kmax", "9", "--no-cache", "--jobs", "2")
    assert one == two


def test_cache_flag(capsys, tmp_path):
    target = tmp_path / "explicit.json"
    run(capsys, "poly", "--k", "5", "--cache", str(target))
    assert target.exists()


def test_module_entry_point(isolated_cache):
    res = subprocess.run([sys.executable, "-m", "kerov", "poly", "--k", "5"], capture_output=True, text=True)
    assert res.returncode == 0 and res.stdout == "R6 + 15*R4 + 5*R2^2 + 8*R2\n"
