import json
import subprocess
import sys

import pytest

from bogocert.cli import main

X11 = {"base_field": {"min_poly": [0, 1]}, "a_invariants": [0, -1, 1, -10, -20]}
QI_CURVE = {"base_field": {"min_poly": [1, 0, 1]}, "a_invariants": [[0, 0], [-1, -2], [0, 0], [-1, 0], [0, 0]]}
CM = {"base_field": {"min_poly": [0, 1]}, "a_invariants": [0, 0, 0, 1, 0]}


@pytest.fixture
def write(tmp_path):
    def _write(name, doc):
        path = tmp_path / name
        path.write_text(doc if isinstance(doc, str) else json.dumps(doc), encoding="utf-8")
        return str(path)

    return _write


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_badset(capsys, write):
    code, out, _ = run(capsys, "badset", write("e.json", QI_CURVE))
    assert code == 0
    assert json.loads(out)["bad_set"]["primes"] == [2, 17]


def test_check(capsys, write):
    code, out, _ = run(capsys, "check", write("c.json", X11), "--p", "19")
    assert code == 0
    (report,) = json.loads(out)["reports"]
    assert set(report["flags"].values()) == {"holds"}


def test_search_and_verify(capsys, write):
    code, out, _ = run(capsys, "search", write("c.json", X11), "--pmax", "200")
    assert code == 0
    certs = json.loads(out)
    assert [c["p"] for c in certs] == [19, 29, 199]
    code, out, _ = run(capsys, "verify", write("certs.json", out))
    assert code == 0 and json.loads(out)["verified"]


def test_verify_failure_exit_code(capsys, write):
    _, out, _ = run(capsys, "search", write("c.json", X11), "--pmax", "30")
    certs = json.loads(out)
    certs[0]["evidence"]["ii"]["witnesses"][1]["trace"] += 1
    code, out, _ = run(capsys, "verify", write("bad.json", certs))
    assert code == 4
    assert json.loads(out)["verified"] is False


def test_search_with_L_and_bound_mode(capsys, write):
    L = write("L.json", {"min_poly": [-2, 0, 0, 1]})
    code, _, err = run(capsys, "search", write("c.json", X11), "--L", L, "--pmax", "50")
    assert code == 2 and "galois" in err
    code, out, _ = run(capsys, "search", write("c.json", X11), "--L", L, "--pmax", "50", "--galois-bound", "6")
    assert code == 0
    assert all(c["L"]["mode"] == "bound" for c in json.loads(out))


def test_bound_commands(capsys):
    code, out, _ = run(capsys, "bound", "--p", "7", "--dv", "1", "--degK", "1")
    assert code == 0 and json.loads(out)["log10"].startswith("-201.47")
    code, out, _ = run(capsys, "cm-bound", "--d", "2")
    assert json.loads(out)["exponent"] == -30
    code, _, err = run(capsys, "bound", "--p", "5", "--dv", "3", "--degK", "1")
    assert code == 2 and "p > max(3, 2*dv)" in err


def test_census(capsys, write):
    code, out, _ = run(capsys, "census", write("cm.json", CM), "--xmax", "100")
    doc = json.loads(out)
    assert code == 0 and doc["supersingular_primes"] == [7, 11, 19, 23, 31, 43, 47, 59, 67, 71, 79, 83]


@pytest.mark.parametrize(
    "doc,code",
    [
        ("{not json", 2),
        ({"base_field": {"min_poly": [0, 1]}, "a_invariants": [0, 0, 0, 0, 0]}, 2),
        ({"base_field": {"min_poly": [-1, 0, 1]}, "a_invariants": [0, 0, 0, 1, 0]}, 2),
    ],
)
def test_schema_errors(capsys, write, doc, code):
    rc, out, err = run(capsys, "check", write("bad.json", doc), "--p", "7")
    assert rc == code and out == ""
    assert "error" in json.loads(err)


def test_budget_exit_code(capsys, write):
    rc, _, err = run(capsys, "search", write("c.json", X11), "--pmax", str(10**6))
    assert rc == 3 and json.loads(err)["error"] == "BudgetExceeded"


def test_missing_file_exit_code(capsys, tmp_path):
    rc, _, _ = run(capsys, "badset", str(tmp_path / "nope.json"))
    assert rc == 2


def test_console_script_entry_point(write):
    proc = subprocess.run(
        [sys.executable, "-m", "bogocert.cli", "cm-bound", "--d", "1"], capture_output=True, text=True, check=True
    )
    assert json.loads(proc.stdout)["exponent"] == -14


def test_large_integers_serialize_as_strings(capsys, write):
    # j = 2^60 / 3: the canonical model's coefficients and the bad-set integer stay exact
    doc = {"base_field": {"min_poly": [0, 1]}, "j": [str(2**60), 3]}
    rc, out, _ = run(capsys, "badset", write("big.json", doc))
    assert rc == 0 and json.loads(out)["bad_set"]["primes"] == [3]
    from bogocert.schema import dumps

    assert json.loads(dumps({"n": 2**60, "m": 2**53, "f": [2**70, 3]})) == {
        "n": str(2**60),
        "m": 2**53,
        "f": [str(2**70), 3],
    }
