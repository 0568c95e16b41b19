import re
import json
import logging
from fractions import Fraction
from typing import Optional, List, Dict, Sequence, Tuple, Union

from fastapi import HTTPException
from pydantic import ValidationError

from eqp import EqpFunc, Leaf
from errors import DivByZero, MissingTarget, ParamLatError, ParseError
from models import (
    EqpFuncModel,
    FormulaLeafModel,
    FormulaModel,
    LeafModel,
    ProblemFile,
    ReducedOutputModel,
)
from paramlat import ParamBasis, ReducedOutput
from polyring import Poly, RatFunc, as_poly
from solvers import EqpVectorFormula

logger = logging.getLogger(__name__)

# Constants
RATIONAL_PATTERN = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+)\s*)?$")

def parse_rational(text) -> Fraction:
    """Parse an integer or a "p/q" string into an exact rational."""
    if isinstance(text, int) and not isinstance(text, bool):
        return Fraction(text)
    if not isinstance(text, str):
        raise ParseError(f"expected a rational string, got {text!r}")
    match = RATIONAL_PATTERN.match(text)
    if not match:
        raise ParseError(f"malformed rational {text!r}")
    num, den = match.groups()
    den = int(den) if den else 1
    if den == 0:
        raise ParseError(f"zero denominator in {text!r}")
    return Fraction(int(num), den)

def format_rational(value) -> str:
    """Format a rational as "p/q", or as a plain integer when q = 1."""
    return str(Fraction(value))

def parse_poly(coeffs) -> Poly:
    """Parse a coefficient array, lowest degree first."""
    if not isinstance(coeffs, list):
        raise ParseError(f"expected a coefficient array, got {coeffs!r}")
    return Poly([parse_rational(c) for c in coeffs])

def parse_integer_poly(coeffs) -> Poly:
    """Parse a coefficient array that must have integer coefficients."""
    poly = parse_poly(coeffs)
    if not poly.is_integral():
        raise ParseError(f"basis entries need integer coefficients, got {coeffs!r}")
    return poly

def format_poly(poly) -> List[str]:
    return [format_rational(c) for c in as_poly(poly).coeffs]

def parse_ratfunc(value) -> RatFunc:
    """Parse `[...]` as a polynomial or `{"num": [...], "den": [...]}` as a quotient."""
    if isinstance(value, list):
        return RatFunc(parse_poly(value))
    if isinstance(value, dict):
        if set(value) != {"num", "den"}:
            raise ParseError(f"rational function needs exactly the keys num and den, got {sorted(value)}")
        try:
            return RatFunc(parse_poly(value["num"]), parse_poly(value["den"]))
        except DivByZero:
            raise ParseError("rational function with zero denominator")
    raise ParseError(f"expected a polynomial or rational function, got {value!r}")

def format_ratfunc(value) -> Union[List[str], Dict[str, List[str]]]:
    value = value if isinstance(value, RatFunc) else RatFunc(value)
    if value.is_polynomial():
        return format_poly(value.num)
    return {"num": format_poly(value.num), "den": format_poly(value.den)}

def problem_from_dict(data) -> ProblemFile:
    """Validate a decoded JSON object as a problem file."""
    try:
        return ProblemFile.model_validate(data)
    except ValidationError as e:
        raise ParseError(f"invalid problem file: {str(e)}")

def load_problem(path: str) -> ProblemFile:
    """Read and validate a problem file."""
    try:
        with open(path, "r", encoding="utf-8") as f:
            data = json.load(f)
    except json.JSONDecodeError as e:
        raise ParseError(f"{path} is not valid JSON: {str(e)}")
    except OSError as e:
        raise ParseError(f"cannot read {path}: {str(e)}")
    logger.debug(f"Loaded problem file {path}")
    return problem_from_dict(data)

def dump_problem(problem: ProblemFile) -> str:
    return problem.model_dump_json(indent=2, exclude_none=True)

def parse_problem(problem: ProblemFile) -> Tuple[ParamBasis, Optional[Tuple[RatFunc, ...]], Optional[Fraction]]:
    """Turn a validated problem file into (basis, target, delta)."""
    basis = ParamBasis([[parse_integer_poly(e) for e in row] for row in problem.basis], problem.m)
    target = None
    if problem.target is not None:
        target = tuple(parse_ratfunc(x) for x in problem.target)
    delta = parse_rational(problem.delta) if problem.delta is not None else None
    return basis, target, delta

def problem_from_basis(basis, target: Optional[Sequence] = None, delta=None, name: Optional[str] = None) -> ProblemFile:
    """Build a problem file from a basis of polynomials."""
    basis = basis if isinstance(basis, ParamBasis) else ParamBasis(basis)
    return ProblemFile(
        m=basis.dim,
        basis=[[format_poly(e) for e in v] for v in basis],
        target=[format_ratfunc(x) for x in target] if target is not None else None,
        delta=format_rational(delta) if delta is not None else None,
        name=name,
    )

def eqp_to_model(e: EqpFunc) -> EqpFuncModel:
    return EqpFuncModel(threshold=e.threshold, modulus=e.modulus, pieces=[format_poly(p) for p in e.pieces])

def leaf_to_model(leaf: Leaf) -> LeafModel:
    """Serialize a reduced-basis leaf, both in s and in t."""
    return LeafModel(
        modulus=leaf.modulus,
        residue=leaf.residue,
        threshold=leaf.threshold,
        basis=[[format_poly(e) for e in v] for v in leaf.payload],
        basis_t=[[format_poly(leaf.to_original(e)) for e in v] for v in leaf.payload],
        transcript=list(leaf.transcript),
    )

def reduced_to_model(output: ReducedOutput) -> ReducedOutputModel:
    return ReducedOutputModel(
        delta=format_rational(output.delta),
        modulus=output.modulus,
        threshold=output.threshold,
        leaves=[leaf_to_model(leaf) for leaf in output.leaves],
    )

def formula_to_model(formula: EqpVectorFormula) -> FormulaModel:
    leaves = []
    for leaf in formula.leaves:
        piece = leaf.payload
        leaves.append(FormulaLeafModel(
            modulus=leaf.modulus,
            residue=leaf.residue,
            threshold=leaf.threshold,
            vector=[format_poly(e) for e in piece.vector],
            vector_t=[format_poly(leaf.to_original(e)) for e in piece.vector],
            coefficients=[format_poly(c) for c in piece.coefficients],
            value=format_ratfunc(piece.value),
        ))
    return FormulaModel(
        modulus=formula.modulus,
        threshold=formula.threshold,
        leaves=leaves,
        coordinates=[eqp_to_model(c) for c in formula.coordinates()],
    )

def format_condition(leaf: Leaf) -> str:
    """Describe the progression of a leaf, e.g. "if t ≡ 2 (mod 3), t ≥ 5"."""
    if leaf.modulus == 1:
        return f"for t ≥ {leaf.threshold}"
    return f"if t ≡ {leaf.residue} (mod {leaf.modulus}), t ≥ {leaf.threshold}"

def format_vector(entries: Sequence, var: str = "t") -> str:
    return "(" + ", ".join(e.to_string(var) for e in entries) + ")"

def format_case_split(name: str, rows: List[Tuple[Leaf, str]]) -> str:
    """One line per leaf: "name = text  condition", texts aligned."""
    if not rows:
        return f"{name} undefined"
    width = max(len(text) for _, text in rows)
    return "\n".join(f"{name} = {text.ljust(width)} {format_condition(leaf)}" for leaf, text in rows)

def pretty_reduced(output: ReducedOutput) -> str:
    """Case-split printout of a reduced basis, entries in t."""
    lines = [f"delta = {format_rational(output.delta)}, modulus {output.modulus}, threshold {output.threshold}"]
    for leaf in output.leaves:
        lines.append(format_condition(leaf) + ":")
        for i, v in enumerate(leaf.payload, start=1):
            lines.append(f"  b{i}(t) = {format_vector([leaf.to_original(e) for e in v])}")
    return "\n".join(lines)

def pretty_formula(formula: EqpVectorFormula) -> str:
    """Case-split printout of a solver answer and its norm or distance."""
    rows, values = [], []
    for leaf in formula.leaves:
        piece = leaf.payload
        rows.append((leaf, format_vector([leaf.to_original(e) for e in piece.vector])))
        original = piece.value.compose_affine(Fraction(1, leaf.modulus), Fraction(-leaf.residue, leaf.modulus))
        values.append((leaf, original.to_string()))
    label = "|u(t)|^2" if formula.problem == "svp" else "|u(t) - x(t)|^2"
    return format_case_split("u(t)", rows) + "\n" + format_case_split(label, values)

def http_error(e: Exception) -> HTTPException:
    """Translate a library error into an HTTP error: 422 for unusable input, 400 otherwise."""
    status = 422 if isinstance(e, (ParseError, MissingTarget)) else 400
    name = type(e).__name__ if isinstance(e, ParamLatError) else "InvalidInput"
    return HTTPException(status_code=status, detail={"error": name, "details": str(e)})
