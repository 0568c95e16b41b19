import json
from fractions import Fraction

import pytest
from click.testing import CliRunner

from cli import EXIT_FAIL, EXIT_OK, EXIT_USAGE, paramlat
from helpers import format_rational
from lattice_core import lll_reduce
from models import CheckResult, LeafReport, VerificationReport


@pytest.fixture
def runner():
    return CliRunner()


def test_svp_prints_the_case_split(runner, problem_file):
    result = runner.invoke(paramlat, ["svp", problem_file("intro1")])
    assert result.exit_code == EXIT_OK, result.output
    assert "u(t) = (t, 2)" in result.stdout
    assert "PASS" in result.stdout


def test_svp_json(runner, problem_file):
    result = runner.invoke(paramlat, ["svp", problem_file("intro2"), "--json", "--samples", "2"])
    assert result.exit_code == EXIT_OK, result.output
    data = json.loads(result.stdout)
    assert data["problem"] == "svp"
    assert data["formula"]["modulus"] % 3 == 0
    assert data["verification"]["passed"]


def test_cvp_with_and_without_a_target(runner, problem_file):
    result = runner.invoke(paramlat, ["cvp", problem_file("nearest"), "--json", "--no-verify"])
    assert result.exit_code == EXIT_OK, result.output
    data = json.loads(result.stdout)
    assert data["problem"] == "cvp"
    assert "verification" not in data
    missing = runner.invoke(paramlat, ["cvp", problem_file("intro1")])
    assert missing.exit_code == EXIT_USAGE
    assert "error" in missing.output


def test_reduce_of_a_constant_basis_is_classical_lll(runner, problem_file):
    result = runner.invoke(paramlat, ["reduce", problem_file("constant"), "--json"])
    assert result.exit_code == EXIT_OK, result.output
    data = json.loads(result.stdout)
    expected, _ = lll_reduce([(1, 1, 1), (-1, 0, 2), (3, 5, 6)], Fraction(7, 8))
    leaf = data["leaves"][0]
    assert len(data["leaves"]) == 1
    assert [[e[0] if e else "0" for e in v] for v in leaf["basis_t"]] == [
        [format_rational(x) for x in v] for v in expected
    ]


def test_reduce_rejects_a_bad_delta(runner, problem_file):
    result = runner.invoke(paramlat, ["reduce", problem_file("intro1"), "--delta", "2"])
    assert result.exit_code == EXIT_USAGE


def test_oracle(runner, problem_file):
    result = runner.invoke(paramlat, ["oracle", problem_file("intro2"), "--at", "7", "--json"])
    assert result.exit_code == EXIT_OK, result.output
    data = json.loads(result.stdout)
    assert (data["problem"], data["t"], data["value"]) == ("svp", 7, "2")
    pretty = runner.invoke(paramlat, ["oracle", problem_file("intro2"), "--at", "6"])
    assert pretty.stdout.startswith("u(6) = (")
    assert "|u|^2 = 1" in pretty.stdout


def test_oracle_defaults_to_cvp_with_a_target(runner, problem_file):
    result = runner.invoke(paramlat, ["oracle", problem_file("nearest"), "--at", "4", "--json"])
    assert result.exit_code == EXIT_OK, result.output
    assert json.loads(result.stdout)["problem"] == "cvp"


def test_verify_a_problem_file(runner, problem_file):
    result = runner.invoke(paramlat, ["verify", problem_file("nearest"), "--samples", "2"])
    assert result.exit_code == EXIT_OK, result.output
    assert result.stdout.rstrip().endswith("PASS")


def test_verify_fuzz(runner):
    result = runner.invoke(paramlat, ["verify", "--seed", "3", "--trials", "2", "--samples", "1", "--json"])
    assert result.exit_code == EXIT_OK, result.output
    data = json.loads(result.stdout)
    assert (data["seed"], data["trials"]) == (3, 2)


def test_verify_needs_a_file_or_a_seed(runner):
    result = runner.invoke(paramlat, ["verify"])
    assert result.exit_code == EXIT_USAGE


def test_malformed_problem_file(runner, tmp_path):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({"m": 2, "basis": [[["1"]]]}))
    result = runner.invoke(paramlat, ["svp", str(path)])
    assert result.exit_code == EXIT_USAGE
    assert "invalid problem file" in result.output


def test_failed_verification_exits_with_one(runner, tmp_path, monkeypatch):
    failing = VerificationReport(
        passed=False,
        leaves=[LeafReport(modulus=1, residue=0, threshold=0, checks=[CheckResult(check="norm", t=3, passed=False)])],
    )
    monkeypatch.setattr("cli.verify_file", lambda problem, delta, samples: failing)
    path = tmp_path / "p.json"
    path.write_text(json.dumps({"m": 1, "basis": [[["1"]]]}))
    result = runner.invoke(paramlat, ["verify", str(path)])
    assert result.exit_code == EXIT_FAIL
    assert "FAIL" in result.output
