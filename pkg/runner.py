"""The operations behind the command line and the HTTP routes.

Each function takes a validated ProblemFile and returns the domain result
together with the JSON model both front ends emit.
"""
import logging
from fractions import Fraction
from typing import Optional, Tuple

from config import get_settings
from errors import DimensionTooLarge, MissingTarget, ParseError
from helpers import formula_to_model, parse_problem, parse_rational, reduced_to_model
from lattice_core import cvp_bruteforce, norm2, svp_bruteforce
from models import OracleResult, ProblemFile, ReducedOutputModel, SolveResult, VerificationReport
from paramlat import ReducedOutput, parametric_lll
from solvers import EqpVectorFormula, parametric_cvp, parametric_svp
from verify import (
    check_asymptotics,
    check_cvp_window,
    check_optimality,
    check_reduced,
    check_span,
    merge_reports,
    verify_problem,
)

logger = logging.getLogger(__name__)

PROBLEMS = ("svp", "cvp")


def resolve_delta(problem: ProblemFile, delta: Optional[str] = None) -> Optional[Fraction]:
    """The --delta flag wins over the file's delta; None falls back to the settings."""
    _, _, file_delta = parse_problem(problem)
    return parse_rational(delta) if delta is not None else file_delta


def reduce_problem(
    problem: ProblemFile,
    delta: Optional[str] = None,
    samples: Optional[int] = None,
    verify: bool = True,
) -> Tuple[ReducedOutput, ReducedOutputModel]:
    basis, _, _ = parse_problem(problem)
    output = parametric_lll(basis, resolve_delta(problem, delta))
    model = reduced_to_model(output)
    if verify:
        report = merge_reports([check_reduced(output, samples), check_span(basis, output, samples), check_asymptotics(output)])
        model.verification = report
        model.verified_samples = report.verified_samples
    return output, model


def solve_problem(
    kind: str,
    problem: ProblemFile,
    samples: Optional[int] = None,
    verify: bool = True,
    max_rank: Optional[int] = None,
) -> Tuple[EqpVectorFormula, SolveResult]:
    """Parametric SVP or CVP, verified against the oracles when the rank allows."""
    if kind not in PROBLEMS:
        raise ParseError(f"unknown problem {kind!r}")
    basis, target, _ = parse_problem(problem)
    if kind == "svp":
        formula = parametric_svp(basis, max_rank=max_rank)
    else:
        if target is None:
            raise MissingTarget("cvp needs a target in the problem file")
        formula = parametric_cvp(basis, target, max_rank=max_rank)
    result = SolveResult(problem=kind, formula=formula_to_model(formula), threshold=formula.threshold)
    if verify:
        if len(basis) > get_settings().oracle_max_rank:
            logger.warning(f"{kind}: rank {len(basis)} is above the oracle limit, formula not verified")
        else:
            reports = [check_optimality(formula, basis, target, samples)]
            if kind == "cvp":
                reports.append(check_cvp_window(formula.reduced, target, samples))
            report = merge_reports(reports)
            result.verification = report
            result.verified_samples = report.verified_samples
    return formula, result


def verify_file(problem: ProblemFile, delta: Optional[str] = None, samples: Optional[int] = None) -> VerificationReport:
    basis, target, _ = parse_problem(problem)
    return verify_problem(basis, target, resolve_delta(problem, delta), samples)


def run_oracle(problem: ProblemFile, t: int, kind: Optional[str] = None, max_rank: Optional[int] = None) -> OracleResult:
    """Brute-force SVP or CVP of the lattice at a single value of t."""
    basis, target, _ = parse_problem(problem)
    kind = kind or ("cvp" if target is not None else "svp")
    if kind not in PROBLEMS:
        raise ParseError(f"unknown problem {kind!r}")
    limit = get_settings().oracle_max_rank if max_rank is None else max_rank
    if len(basis) > limit:
        raise DimensionTooLarge(f"rank {len(basis)} exceeds the oracle limit {limit}")
    lattice = [tuple(int(x) for x in v) for v in basis.evaluate(t)]
    if kind == "svp":
        vector = svp_bruteforce(lattice)
        value = Fraction(norm2(vector))
    else:
        if target is None:
            raise MissingTarget("cvp needs a target in the problem file")
        vector, value = cvp_bruteforce(lattice, [x(t) for x in target])
    logger.info(f"oracle: {kind} at t = {t} -> {vector}, value {value}")
    return OracleResult(problem=kind, t=t, vector=[str(x) for x in vector], value=str(value))
