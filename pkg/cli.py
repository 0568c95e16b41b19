import sys
import logging
import functools
from typing import Optional

import click

from config import get_settings
from errors import CertificationError, ParamLatError
from helpers import load_problem, pretty_formula, pretty_reduced
from runner import reduce_problem, run_oracle, solve_problem, verify_file
from verify import fuzz

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2


def _handle_errors(command):
    """Map library errors to exit statuses: 1 for a failed certificate, 2 for bad input."""
    @functools.wraps(command)
    def wrapper(*args, **kwargs):
        try:
            return command(*args, **kwargs)
        except CertificationError as e:
            logger.error(f"Error in {command.__name__}: {str(e)}", exc_info=True)
            click.echo(f"error: {str(e)}", err=True)
            sys.exit(EXIT_FAIL)
        except (ParamLatError, ValueError) as e:
            click.echo(f"error: {str(e)}", err=True)
            sys.exit(EXIT_USAGE)
    return wrapper


def _emit(model, as_json: bool, text: Optional[str] = None) -> None:
    if as_json or text is None:
        click.echo(model.model_dump_json(indent=2, exclude_none=True))
    else:
        click.echo(text)


def _report_text(report) -> str:
    lines = []
    for leaf in report.leaves:
        for check in leaf.checks:
            status = "ok" if check.passed else "FAIL"
            where = f"t = {check.t}" if check.t is not None else "-"
            line = f"{status:4}  {check.check:12}  mod {leaf.modulus} res {leaf.residue}  {where}"
            if check.detail:
                line += f"  ({check.detail})"
            lines.append(line)
    lines.append("PASS" if report.passed else "FAIL")
    return "\n".join(lines)


def _finish(report) -> None:
    if report is not None and not report.passed:
        click.echo("verification FAILED", err=True)
        sys.exit(EXIT_FAIL)


json_option = click.option("--json/--pretty", "as_json", default=False, help="JSON artifact or case-split text.")
samples_option = click.option("--samples", type=click.IntRange(min=1), default=None, help="Samples per residue class.")
verify_option = click.option("--verify/--no-verify", default=True, help="Check the result at sampled t.")


@click.group()
@click.option("--verbose", "-v", is_flag=True, help="Log pipeline steps to stderr.")
def paramlat(verbose: bool):
    """Parametric lattice reduction, SVP and CVP as formulas in t."""
    level = logging.DEBUG if verbose else logging.WARNING
    logging.basicConfig(level=level, format="%(asctime)s - %(levelname)s - %(message)s", stream=sys.stderr, force=True)
    get_settings()


@paramlat.command()
@click.argument("file", type=click.Path(dir_okay=False))
@click.option("--delta", default=None, help="Lovasz factor p/q, 1/4 < delta < 1.")
@samples_option
@verify_option
@json_option
@_handle_errors
def reduce(file: str, delta: Optional[str], samples: Optional[int], verify: bool, as_json: bool):
    """Eventually LLL-reduced basis of FILE, per progression of t."""
    output, model = reduce_problem(load_problem(file), delta, samples, verify)
    text = pretty_reduced(output)
    if model.verification is not None:
        text += f"\nverified at t in {model.verified_samples}: {'PASS' if model.verification.passed else 'FAIL'}"
    _emit(model, as_json, text)
    _finish(model.verification)


def _solve(kind: str, file: str, samples: Optional[int], verify: bool, max_rank: Optional[int], as_json: bool):
    formula, result = solve_problem(kind, load_problem(file), samples, verify, max_rank)
    text = pretty_formula(formula)
    if result.verification is not None:
        text += f"\nverified at t in {result.verified_samples}: {'PASS' if result.verification.passed else 'FAIL'}"
    _emit(result, as_json, text)
    _finish(result.verification)


@paramlat.command()
@click.argument("file", type=click.Path(dir_okay=False))
@samples_option
@verify_option
@click.option("--max-rank", type=click.IntRange(min=1), default=None, help="Refuse larger ranks.")
@json_option
@_handle_errors
def svp(file: str, samples: Optional[int], verify: bool, max_rank: Optional[int], as_json: bool):
    """Shortest nonzero vector of the lattice in FILE."""
    _solve("svp", file, samples, verify, max_rank, as_json)


@paramlat.command()
@click.argument("file", type=click.Path(dir_okay=False))
@samples_option
@verify_option
@click.option("--max-rank", type=click.IntRange(min=1), default=None, help="Refuse larger ranks.")
@json_option
@_handle_errors
def cvp(file: str, samples: Optional[int], verify: bool, max_rank: Optional[int], as_json: bool):
    """Lattice vector closest to the target in FILE."""
    _solve("cvp", file, samples, verify, max_rank, as_json)


@paramlat.command()
@click.argument("file", required=False, type=click.Path(dir_okay=False))
@click.option("--delta", default=None, help="Lovasz factor p/q.")
@samples_option
@click.option("--seed", type=int, default=None, help="Run the random-instance harness with this seed.")
@click.option("--trials", type=click.IntRange(min=1), default=20, show_default=True)
@json_option
@_handle_errors
def verify(file: Optional[str], delta: Optional[str], samples: Optional[int], seed: Optional[int], trials: int, as_json: bool):
    """Check reduction, span and optimality for FILE, or fuzz with --seed."""
    if file is None:
        if seed is None:
            raise click.UsageError("give a problem FILE or --seed")
        report = fuzz(seed, trials, samples)
    else:
        report = verify_file(load_problem(file), delta, samples)
    _emit(report, as_json, _report_text(report))
    _finish(report)


@paramlat.command()
@click.argument("file", type=click.Path(dir_okay=False))
@click.option("--at", "t", type=click.IntRange(min=0), required=True, help="Value of t.")
@click.option("--kind", type=click.Choice(["svp", "cvp"]), default=None, help="Defaults to cvp when FILE has a target.")
@click.option("--max-rank", type=click.IntRange(min=1), default=None, help="Refuse larger ranks.")
@json_option
@_handle_errors
def oracle(file: str, t: int, kind: Optional[str], max_rank: Optional[int], as_json: bool):
    """Brute-force answer for the lattice in FILE at a single t."""
    result = run_oracle(load_problem(file), t, kind, max_rank)
    label = "|u|^2" if result.problem == "svp" else "|u - x|^2"
    _emit(result, as_json, f"u({t}) = ({', '.join(result.vector)})  {label} = {result.value}")


if __name__ == "__main__":
    paramlat()
