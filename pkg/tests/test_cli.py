import json
import subprocess
import sys

import pytest

from qprofile.cli import main
from qprofile.counting import QPolynomial, sigma_poly
from qprofile.ffield import make_field
from qprofile.fqpoly import parse_poly
from qprofile.partition import Partition


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_sigma(capsys):
    code, out, _ = run(capsys, "sigma", "--mu", "3", "--q", "2")
    assert code == 0 and out.splitlines()[0] == "1"
    code, out, _ = run(capsys, "sigma", "--mu", "2,1", "--q", "2")
    assert out.splitlines() == ["7", "sigma(2,1)(q) = q^2 + q + 1"]


def test_sigma_json_roundtrip(capsys):
    code, out, _ = run(capsys, "sigma", "--mu", "2,2,1", "--q", "3", "--format", "json")
    doc = json.loads(out)
    mu = Partition.parse(doc["partition"])
    assert mu == Partition.of(2, 2, 1)
    assert QPolynomial(tuple(doc["poly"]["coeffs"])) == sigma_poly(mu)
    assert doc["value"] == sigma_poly(mu)(3)


def test_bad_field_exits_2(capsys):
    code, _, err = run(capsys, "sigma", "--mu", "2,1", "--q", "6")
    assert code == 2 and "not a prime power" in err
    assert len(err.strip().splitlines()) == 1


def test_bad_partition_exits_2(capsys):
    code, _, err = run(capsys, "sigma", "--mu", "1,2")
    assert code == 2


def test_argparse_errors_exit_2(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["verify", "--q", "2"])
    assert exc.value.code == 2


def test_verify(capsys):
    code, out, _ = run(capsys, "verify", "--q", "2", "--n", "3")
    assert code == 0
    assert "PASS" in out
    code, out, _ = run(capsys, "verify", "--q", "2", "--n", "3", "--format", "json")
    doc = json.loads(out)
    assert doc["passed"]
    assert [(r["label"], r["enumerated"]) for r in doc["rows"]] == [("(3)", 1), ("(2,1)", 7), ("(1,1,1)", 7)]


def test_verify_with_poly_and_bad_poly(capsys):
    code, _, _ = run(capsys, "verify", "--q", "2", "--n", "3", "--poly", "1,0,1,1")
    assert code == 0
    code, _, err = run(capsys, "verify", "--q", "2", "--n", "3", "--poly", "1,1,1,1")
    assert code == 2 and "irreducible" in err


def test_verify_budget_exceeded(capsys):
    code, _, err = run(capsys, "verify", "--q", "2", "--n", "4", "--budget", "10")
    assert code == 2 and "budget" in err


def test_splitting(capsys):
    code, out, _ = run(capsys, "splitting", "--m", "2", "--d", "2", "--q", "2")
    assert out.strip() == "20"
    code, out, _ = run(capsys, "splitting", "--m", "2", "--d", "2", "--q", "3", "--brute", "--format", "json")
    doc = json.loads(out)
    assert doc["value"] == doc["brute"] == 90 and doc["match"]


def test_sigma_table(capsys):
    code, out, _ = run(capsys, "sigma-table", "--n", "4", "--q", "2")
    assert code == 0
    assert "(2,2)" in out and "= 20" in out and "column sums: ok" in out


def test_whittaker(capsys):
    code, out, _ = run(capsys, "whittaker", "--n", "3", "--format", "json")
    rows = {r["partition"]: r for r in json.loads(out)["rows"]}
    assert rows["(3)"]["sign"] == 1 and rows["(3)"]["magnitude"]["coeffs"] == [1]
    assert rows["(2,1)"]["sign"] == -1 and rows["(2,1)"]["magnitude"]["coeffs"] == [1, 1, 1]


def test_profile(capsys, tmp_path):
    path = tmp_path / "t.txt"
    path.write_text("0,0,1;1,0,1;0,1,0\n")
    code, out, _ = run(capsys, "profile", "--q", "2", "--matrix", f"@{path}", "--subspace", "1,0,0;0,1,0")
    assert out.strip() == "(2,1)"
    code, out, _ = run(capsys, "profile", "--q", "2", "--matrix", str(path), "--subspace", "1,0,0", "--format", "json")
    assert Partition.parse(json.loads(out)["profile"]) == Partition.of(1, 1, 1)


def test_profile_of_zero_subspace(capsys):
    code, out, _ = run(capsys, "profile", "--q", "2", "--matrix", "1,0;0,1", "--subspace", "")
    assert out.strip() == "()"


def test_defect(capsys):
    code, out, _ = run(capsys, "defect", "--q", "2", "--map", "1,0,0|0,1,0", "--format", "json")
    doc = json.loads(out)
    assert doc["defect"] == "(2,1)" and doc["ell"] == 2 and doc["simple"]
    assert doc["chain"] == [3, 1, 0] and doc["invariant_factors"] == ["1"]
    code, out, _ = run(capsys, "defect", "--q", "2", "--map", "1,0,0|1,0,0", "--format", "json")
    doc = json.loads(out)
    assert not doc["simple"] and doc["invariant_factors"] == ["1,1"]
    F2 = make_field(2)
    assert parse_poly(F2, doc["invariant_factors"][0]) == parse_poly(F2, "1,1")
    code, out, _ = run(capsys, "defect", "--q", "2", "--map", "|", "--n", "3")
    assert "(3)" in out


def test_enumerate(capsys):
    code, out, _ = run(capsys, "enumerate", "--q", "2", "--n", "4", "--k", "2")
    assert len(out.splitlines()) == 35
    code, out, _ = run(capsys, "enumerate", "--q", "3", "--n", "3", "--k", "1", "--format", "json")
    assert json.loads(out)["count"] == 13


def test_selftest(capsys):
    code, out, _ = run(capsys, "selftest", "--trials", "3")
    assert code == 0 and out.strip().endswith("PASS")


def test_verify_duality_cmd(capsys):
    code, out, _ = run(capsys, "verify-duality", "--q", "2", "--n", "3", "--trials", "5", "--seed", "4")
    assert code == 0 and "PASS" in out


def test_output_is_byte_identical_across_runs():
    cmd = [sys.executable, "-m", "qprofile.cli", "verify-duality", "--q", "2", "--n", "3", "--trials", "4", "--seed", "9", "--format", "json"]
    a = subprocess.run(cmd, capture_output=True, check=True).stdout
    b = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert a == b and json.loads(a)["passed"]
