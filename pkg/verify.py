"""Evaluation-based verification of reduced bases and solver formulas.

Every symbolic claim is re-checked at sampled values of t with exact
rational arithmetic against the brute-force oracles in lattice_core. Leaf
(M, r, T) is sampled at t = r + M*ceil(T/M) + k*M, k = 0..samples-1, so
every residue class is covered at or above its threshold.
"""
import logging
import random
from fractions import Fraction
from typing import Iterable, List, Optional, Sequence

from config import get_settings
from eqp import Leaf
from errors import DimensionTooLarge, ParamLatError
from lattice_core import (
    babai_nearest_plane,
    combine,
    coordinates,
    cvp_bruteforce,
    gram_schmidt,
    lattice_contains,
    lattice_determinant_squared,
    lll_conditions,
    norm2,
    same_lattice,
    sub,
    svp_bruteforce,
)
from models import CheckResult, LeafReport, VerificationReport
from paramlat import ParamBasis, ReducedOutput, asymptotic_report, is_independent, parametric_lll
from polyring import Poly, RatFunc
from solvers import EqpVectorFormula, parametric_cvp, parametric_svp

logger = logging.getLogger(__name__)


def sample_schedule(leaf: Leaf, samples: int) -> List[int]:
    if samples < 1:
        raise ValueError("samples must be at least 1")
    start = leaf.residue + leaf.modulus * -(-leaf.threshold // leaf.modulus)
    return [start + k * leaf.modulus for k in range(samples)]


def _samples(samples: Optional[int]) -> int:
    return get_settings().samples if samples is None else samples


def _as_basis(basis) -> ParamBasis:
    return basis if isinstance(basis, ParamBasis) else ParamBasis(basis)


def _as_target(target: Optional[Sequence]) -> Optional[tuple]:
    if target is None:
        return None
    return tuple(x if isinstance(x, RatFunc) else RatFunc(x) for x in target)


def _integral_vectors(vectors: Iterable[Sequence]) -> Optional[List[tuple]]:
    """The vectors as integer tuples, or None if some entry is not an integer."""
    out = []
    for v in vectors:
        values = [Fraction(x) for x in v]
        if any(x.denominator != 1 for x in values):
            return None
        out.append(tuple(int(x) for x in values))
    return out


def _leaf_report(leaf: Leaf, samples: List[int], checks: List[CheckResult]) -> LeafReport:
    failed = [c.t for c in checks if not c.passed and c.t is not None]
    return LeafReport(
        modulus=leaf.modulus,
        residue=leaf.residue,
        threshold=leaf.threshold,
        samples=samples,
        checks=checks,
        counterexample=failed[0] if failed else None,
    )


def merge_reports(
    reports: Iterable[VerificationReport],
    seed: Optional[int] = None,
    trials: Optional[int] = None,
) -> VerificationReport:
    leaves = [leaf for report in reports for leaf in report.leaves]
    passed = all(c.passed for leaf in leaves for c in leaf.checks)
    return VerificationReport(passed=passed, leaves=leaves, seed=seed, trials=trials)


def _finish(name: str, leaves: List[LeafReport]) -> VerificationReport:
    report = merge_reports([VerificationReport(passed=True, leaves=leaves)])
    if report.passed:
        logger.info(f"{name}: PASS on {len(leaves)} leaves")
    else:
        for check in report.failures:
            logger.warning(f"{name}: {check.check} failed at t = {check.t}: {check.detail}")
    return report


def _failed(check: str, t: Optional[int], detail: str) -> CheckResult:
    return CheckResult(check=check, t=t, passed=False, detail=detail)


def check_reduced(output: ReducedOutput, samples_per_class: Optional[int] = None) -> VerificationReport:
    """Both LLL conditions with the pipeline's delta at every sample of every leaf."""
    k = _samples(samples_per_class)
    leaves = []
    for leaf in output.leaves:
        ts = sample_schedule(leaf, k)
        checks = []
        for t in ts:
            basis = _integral_vectors(leaf.payload.evaluate(leaf.local(t)))
            if basis is None:
                checks.append(_failed("integral", t, "reduced basis has non-integral entries"))
                continue
            size_reduced, lovasz = lll_conditions(basis, output.delta)
            checks.append(CheckResult(check="size_reduced", t=t, passed=size_reduced))
            checks.append(CheckResult(check="lovasz", t=t, passed=lovasz))
        leaves.append(_leaf_report(leaf, ts, checks))
    return _finish("check_reduced", leaves)


def check_span(before, after: ReducedOutput, samples: Optional[int] = None) -> VerificationReport:
    """HNF of the input basis equals HNF of the leaf basis at every sample."""
    before = _as_basis(before)
    k = _samples(samples)
    leaves = []
    for leaf in after.leaves:
        ts = sample_schedule(leaf, k)
        checks = []
        for t in ts:
            original = _integral_vectors(before.evaluate(t))
            reduced = _integral_vectors(leaf.payload.evaluate(leaf.local(t)))
            if original is None or reduced is None:
                checks.append(_failed("span", t, "non-integral basis entries"))
                continue
            passed = same_lattice(original, reduced)
            checks.append(CheckResult(
                check="span", t=t, passed=passed,
                detail=None if passed else "reduced basis spans a different lattice",
            ))
            volume, reduced_volume = lattice_determinant_squared(original), lattice_determinant_squared(reduced)
            checks.append(CheckResult(
                check="determinant", t=t, passed=volume == reduced_volume,
                detail=None if volume == reduced_volume else f"det^2 {volume} became {reduced_volume}",
            ))
        leaves.append(_leaf_report(leaf, ts, checks))
    return _finish("check_span", leaves)


def check_asymptotics(output: ReducedOutput) -> VerificationReport:
    """Lovasz limits reach delta, and rho limits equal the pilot coefficients when the pilots are independent."""
    leaves = []
    for leaf in output.leaves:
        report = asymptotic_report(leaf.payload, output.delta)
        low = [x for x in report.lovasz_limits if x < output.delta]
        checks = [CheckResult(
            check="lovasz_limit", passed=not low,
            detail=None if not low else f"limits {[str(x) for x in low]} below {output.delta}",
        )]
        if report.pilot_mu:
            agree = report.pilots_agree()
            checks.append(CheckResult(
                check="pilot_mu", passed=agree,
                detail=None if agree else "rho limits differ from the pilot Gram-Schmidt coefficients",
            ))
        leaves.append(_leaf_report(leaf, [], checks))
    return _finish("check_asymptotics", leaves)


def check_optimality(
    formula: EqpVectorFormula,
    basis=None,
    target: Optional[Sequence] = None,
    samples: Optional[int] = None,
) -> VerificationReport:
    """Compare the formula's norm (svp) or distance (cvp) with the brute-force optimum."""
    basis = formula.reduced.source if basis is None else _as_basis(basis)
    target = formula.target if target is None else _as_target(target)
    limit = get_settings().oracle_max_rank
    if len(basis) > limit:
        raise DimensionTooLarge(f"rank {len(basis)} exceeds the oracle limit {limit}")
    k = _samples(samples)
    leaves = []
    for leaf in formula.leaves:
        ts = sample_schedule(leaf, k)
        checks = []
        for t in ts:
            s = leaf.local(t)
            lattice = _integral_vectors(basis.evaluate(t))
            found = _integral_vectors([[e(s) for e in leaf.payload.vector]])
            if found is None:
                checks.append(_failed("integral", t, "formula vector has non-integral entries"))
                continue
            u = found[0]
            member = lattice_contains(lattice, u)
            checks.append(CheckResult(
                check="membership", t=t, passed=member,
                detail=None if member else f"{u} is not in the lattice",
            ))
            if formula.problem == "svp":
                got = Fraction(norm2(u))
                best = Fraction(norm2(svp_bruteforce(lattice)))
                name = "norm"
            else:
                x = [xi(t) for xi in target]
                got = Fraction(norm2(sub(u, x)))
                _, best = cvp_bruteforce(lattice, x)
                name = "distance"
            passed = got == best and leaf.payload.value(s) == got
            checks.append(CheckResult(
                check=name, t=t, passed=passed,
                detail=None if passed else f"formula {got}, oracle {best}",
            ))
        leaves.append(_leaf_report(leaf, ts, checks))
    return _finish(f"check_optimality[{formula.problem}]", leaves)


def check_cvp_window(reduced: ReducedOutput, target: Sequence, samples: Optional[int] = None) -> VerificationReport:
    """The optimal top coefficient lies within 2^(n/2-1) of c_n, and the Babai bound holds."""
    target = _as_target(target)
    k = _samples(samples)
    leaves = []
    for leaf in reduced.leaves:
        ts = sample_schedule(leaf, k)
        checks = []
        for t in ts:
            basis = _integral_vectors(leaf.payload.evaluate(leaf.local(t)))
            n = len(basis)
            if not n:
                continue
            x = [xi(t) for xi in target]
            c = coordinates(basis, x)
            w, _ = cvp_bruteforce(basis, x)
            a = coordinates(basis, w)
            bound = Fraction(2) ** (n - 2)
            gap = (a[-1] - c[-1]) ** 2
            checks.append(CheckResult(
                check="cvp_window", t=t, passed=gap <= bound,
                detail=None if gap <= bound else f"(a_n - c_n)^2 = {gap} > {bound}",
            ))
            y = combine(c, basis)
            nearest, _ = babai_nearest_plane(basis, y)
            babai = norm2(sub(nearest, y))
            last = gram_schmidt(basis).norms[-1]
            checks.append(CheckResult(
                check="babai", t=t, passed=babai <= bound * last,
                detail=None if babai <= bound * last else f"{babai} > {bound * last}",
            ))
        leaves.append(_leaf_report(leaf, ts, checks))
    return _finish("check_cvp_window", leaves)


def verify_problem(
    basis,
    target: Optional[Sequence] = None,
    delta=None,
    samples: Optional[int] = None,
    limit: Optional[int] = None,
) -> VerificationReport:
    """Reduce, solve and check everything the rank guards allow."""
    basis = _as_basis(basis)
    settings = get_settings()
    reduced = parametric_lll(basis, delta, limit)
    reports = [check_reduced(reduced, samples), check_span(basis, reduced, samples), check_asymptotics(reduced)]
    n = len(basis)
    if 0 < n <= min(settings.max_rank, settings.oracle_max_rank):
        reports.append(check_optimality(parametric_svp(basis, limit), samples=samples))
        if target is not None:
            cvp = parametric_cvp(basis, target, limit)
            reports.append(check_optimality(cvp, samples=samples))
            reports.append(check_cvp_window(cvp.reduced, target, samples))
    else:
        logger.info(f"verify_problem: rank {n} skips the oracle checks")
    return merge_reports(reports)


def random_poly(rng: random.Random, degree: int, bound: int) -> Poly:
    return Poly([rng.randint(-bound, bound) for _ in range(rng.randint(0, degree) + 1)])


def random_basis(rng: random.Random, rank: int, dim: int, degree: int = 2, bound: int = 5) -> ParamBasis:
    """Random basis with independent vectors over Q(t)."""
    while True:
        basis = ParamBasis(
            [[random_poly(rng, degree, bound) for _ in range(dim)] for _ in range(rank)], dim
        )
        if is_independent(basis):
            return basis


def fuzz(
    seed: int = 0,
    trials: int = 20,
    samples: Optional[int] = None,
    max_rank: int = 2,
    max_dim: int = 3,
    degree: int = 2,
    bound: int = 5,
    limit: Optional[int] = None,
) -> VerificationReport:
    """verify_problem on reproducible random instances; every other trial carries a target."""
    rng = random.Random(seed)
    reports = []
    for trial in range(trials):
        rank = rng.randint(1, max_rank)
        dim = rng.randint(rank, max(rank, max_dim))
        basis = random_basis(rng, rank, dim, degree, bound)
        target = [random_poly(rng, degree, bound) for _ in range(dim)] if trial % 2 else None
        logger.debug(f"fuzz trial {trial}: basis {basis.to_string()}, target {target}")
        try:
            reports.append(verify_problem(basis, target, samples=samples, limit=limit))
        except ParamLatError as e:
            logger.error(f"Error in fuzz trial {trial}: {str(e)}", exc_info=True)
            check = _failed("pipeline", None, f"trial {trial} on {basis.to_string()}: {str(e)}")
            reports.append(VerificationReport(
                passed=False,
                leaves=[LeafReport(modulus=1, residue=0, threshold=0, checks=[check])],
            ))
    report = merge_reports(reports, seed=seed, trials=trials)
    logger.info(f"fuzz: seed {seed}, {trials} trials, {'PASS' if report.passed else 'FAIL'}")
    return report
