import json
import os
from fractions import Fraction

import pytest

from eqp import Leaf
from errors import ParseError, RankDeficient
from helpers import (
    dump_problem,
    format_condition,
    format_ratfunc,
    format_rational,
    formula_to_model,
    http_error,
    load_problem,
    parse_integer_poly,
    parse_poly,
    parse_problem,
    parse_ratfunc,
    parse_rational,
    pretty_formula,
    pretty_reduced,
    problem_from_basis,
    problem_from_dict,
    reduced_to_model,
)
from paramlat import ParamBasis, parametric_lll
from polyring import Poly, RatFunc
from solvers import parametric_svp

from conftest import PROBLEMS_DIR

T = Poly.t()


@pytest.mark.parametrize("text,expected", [
    ("3/4", Fraction(3, 4)),
    (" -2 ", Fraction(-2)),
    ("+7", Fraction(7)),
    ("6/4", Fraction(3, 2)),
    (5, Fraction(5)),
])
def test_parse_rational(text, expected):
    assert parse_rational(text) == expected


@pytest.mark.parametrize("text", ["0.5", "1/0", "", "t", True, None, "1/-2"])
def test_parse_rational_rejects(text):
    with pytest.raises(ParseError):
        parse_rational(text)


def test_format_rational():
    assert format_rational(Fraction(6, 4)) == "3/2"
    assert format_rational(4) == "4"
    assert format_rational(Fraction(-1, 3)) == "-1/3"


def test_parse_poly():
    assert parse_poly(["1", "0", "1/2"]) == Poly([1, 0, Fraction(1, 2)])
    assert parse_poly([]) == Poly()
    with pytest.raises(ParseError):
        parse_poly("1")
    with pytest.raises(ParseError):
        parse_integer_poly(["1/2"])


def test_parse_and_format_ratfunc():
    value = parse_ratfunc({"num": ["1", "0", "1"], "den": ["0", "2"]})
    assert value == RatFunc(T * T + 1, T * 2)
    assert format_ratfunc(value) == {"num": ["1/2", "0", "1/2"], "den": ["0", "1"]}
    assert parse_ratfunc(["0", "1"]) == RatFunc(T)
    assert format_ratfunc(RatFunc(T)) == ["0", "1"]
    for bad in ({"num": ["1"], "den": ["0"]}, {"num": ["1"]}, 3):
        with pytest.raises(ParseError):
            parse_ratfunc(bad)


def test_problem_validation():
    problem = problem_from_dict({"m": 1, "basis": [[[1, 2]]]})
    assert problem.basis == [[["1", "2"]]]
    bad = [
        {"m": 2, "basis": [[["1"]]]},
        {"m": 1, "basis": [[["1"]], [["2"]]]},
        {"m": 1, "basis": [[["1"]]], "target": [["1"], ["2"]]},
        {"m": 0, "basis": []},
        {"basis": [[["1"]]]},
    ]
    for data in bad:
        with pytest.raises(ParseError):
            problem_from_dict(data)


def test_load_problem_errors(tmp_path):
    broken = tmp_path / "broken.json"
    broken.write_text("{not json")
    with pytest.raises(ParseError):
        load_problem(str(broken))
    with pytest.raises(ParseError):
        load_problem(str(tmp_path / "missing.json"))


def test_bundled_problems_survive_a_dump(tmp_path):
    for entry in sorted(os.listdir(PROBLEMS_DIR)):
        problem = load_problem(os.path.join(PROBLEMS_DIR, entry))
        copy = tmp_path / entry
        copy.write_text(dump_problem(problem))
        assert load_problem(str(copy)) == problem
        assert json.loads(dump_problem(problem))["m"] == problem.m


def test_parse_problem(problem_file):
    basis, target, delta = parse_problem(load_problem(problem_file("intro1")))
    assert basis == ParamBasis([[T, 2], [1, T * T]])
    assert target is None and delta is None
    _, target, _ = parse_problem(load_problem(problem_file("nearest")))
    assert target == (RatFunc(T * T + T), RatFunc(T * T + 1, T * 2))


def test_problem_from_basis_round_trip():
    basis = ParamBasis([[T, 2], [1, T * T]])
    target = (RatFunc(T), RatFunc(1, T))
    problem = problem_from_basis(basis, target, Fraction(9, 10), name="x")
    assert problem.delta == "9/10"
    assert parse_problem(problem) == (basis, target, Fraction(9, 10))


def test_format_condition():
    assert format_condition(Leaf(1, 0, 5, None)) == "for t ≥ 5"
    assert format_condition(Leaf(3, 2, 7, None)) == "if t ≡ 2 (mod 3), t ≥ 7"


def test_reduced_to_model(intro2):
    model = reduced_to_model(parametric_lll(intro2))
    assert model.delta == "3/4"
    assert model.modulus == 3
    assert [leaf.residue for leaf in model.leaves] == [0, 1, 2]
    assert all(leaf.transcript for leaf in model.leaves)


def test_formula_to_model_and_pretty_output(intro1):
    formula = parametric_svp(intro1)
    model = formula_to_model(formula)
    assert model.leaves[0].vector_t == [["0", "1"], ["2"]]
    assert model.leaves[0].value == ["4", "0", "1"]
    assert model.coordinates[0].pieces == [["0", "1"]]
    text = pretty_formula(formula)
    assert f"u(t) = (t, 2) for t ≥ {formula.threshold}" in text
    assert "|u(t)|^2 = t^2 + 4" in text
    assert "b2(t) = (-2*t + 1, t^2 - 4)" in pretty_reduced(formula.reduced)


def test_http_error():
    assert http_error(ParseError("x")).status_code == 422
    error = http_error(RankDeficient("dependent"))
    assert error.status_code == 400
    assert error.detail == {"error": "RankDeficient", "details": "dependent"}
    assert http_error(ValueError("z")).detail["error"] == "InvalidInput"
