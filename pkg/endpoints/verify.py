"""Verification and fuzz routes. Handlers are plain def because sampling and brute force are CPU-bound."""
from fastapi import APIRouter, HTTPException
from models import FuzzRequest, ProblemRequest, VerificationReport
from helpers import http_error
from errors import ParamLatError
from runner import verify_file
from verify import fuzz
import logging

router = APIRouter()
logger = logging.getLogger(__name__)

@router.post("/verify", response_model=VerificationReport, response_model_exclude_none=True)
def verify_problem(req: ProblemRequest):
    """Check reduction, span and optimality at sampled t."""
    try:
        report = verify_file(req.problem, req.delta, req.samples)
        logger.info(f"Verification {'passed' if report.passed else 'failed'} on {len(report.leaves)} leaf reports")
        return report
    except HTTPException:
        raise
    except (ParamLatError, ValueError) as e:
        logger.error(f"Error in verify_problem: {str(e)}")
        raise http_error(e)
    except Exception as e:
        logger.error(f"Error in verify_problem: {str(e)}", exc_info=True)
        raise HTTPException(status_code=500, detail={"error": "Failed to verify problem", "details": str(e)})

@router.post("/verify/fuzz", response_model=VerificationReport, response_model_exclude_none=True)
def verify_random(req: FuzzRequest):
    """Verify reproducible random instances."""
    try:
        if req.trials < 1:
            raise HTTPException(status_code=400, detail="trials must be positive")
        return fuzz(req.seed, req.trials, req.samples)
    except HTTPException:
        raise
    except Exception as e:
        logger.error(f"Error in verify_random: {str(e)}", exc_info=True)
        raise HTTPException(status_code=500, detail={"error": "Failed to run fuzz harness", "details": str(e)})
