"""SVP, CVP and oracle routes. Plain def handlers, so the CPU-bound solvers run in the threadpool."""
from fastapi import APIRouter, HTTPException
from models import OracleRequest, OracleResult, ProblemRequest, SolveResult
from helpers import http_error
from errors import ParamLatError
from runner import run_oracle, solve_problem
import logging

router = APIRouter()
logger = logging.getLogger(__name__)

def _solve(kind: str, req: ProblemRequest) -> SolveResult:
    try:
        _, result = solve_problem(kind, req.problem, req.samples, req.verify)
        logger.info(f"Solved {kind}: modulus {result.formula.modulus}, threshold {result.threshold}")
        return result
    except HTTPException:
        raise
    except (ParamLatError, ValueError) as e:
        logger.error(f"Error in {kind}: {str(e)}")
        raise http_error(e)
    except Exception as e:
        logger.error(f"Error in {kind}: {str(e)}", exc_info=True)
        raise HTTPException(status_code=500, detail={"error": f"Failed to solve {kind}", "details": str(e)})

@router.post("/svp", response_model=SolveResult, response_model_exclude_none=True)
def shortest_vector(req: ProblemRequest):
    """Shortest nonzero vector as a formula in t."""
    return _solve("svp", req)

@router.post("/cvp", response_model=SolveResult, response_model_exclude_none=True)
def closest_vector(req: ProblemRequest):
    """Closest lattice vector to the problem's target as a formula in t."""
    return _solve("cvp", req)

@router.post("/oracle", response_model=OracleResult)
def oracle(req: OracleRequest):
    """Brute-force answer at a single value of t."""
    try:
        return run_oracle(req.problem, req.at, req.kind)
    except HTTPException:
        raise
    except (ParamLatError, ValueError) as e:
        logger.error(f"Error in oracle: {str(e)}")
        raise http_error(e)
    except Exception as e:
        logger.error(f"Error in oracle: {str(e)}", exc_info=True)
        raise HTTPException(status_code=500, detail={"error": "Failed to run oracle", "details": str(e)})
