"""Reduction routes. Handlers are plain def: the work is CPU-bound and runs in the threadpool."""
from fastapi import APIRouter, HTTPException
from models import ProblemRequest, ReducedOutputModel
from helpers import http_error
from errors import ParamLatError
from runner import reduce_problem
import logging

router = APIRouter()
logger = logging.getLogger(__name__)

@router.post("/reduce", response_model=ReducedOutputModel, response_model_exclude_none=True)
def reduce_basis(req: ProblemRequest):
    """Eventually LLL-reduced basis, one leaf per progression of t."""
    try:
        _, model = reduce_problem(req.problem, req.delta, req.samples, req.verify)
        logger.info(f"Reduced basis: {len(model.leaves)} leaves, modulus {model.modulus}")
        return model
    except HTTPException:
        raise
    except (ParamLatError, ValueError) as e:
        logger.error(f"Error in reduce_basis: {str(e)}")
        raise http_error(e)
    except Exception as e:
        logger.error(f"Error in reduce_basis: {str(e)}", exc_info=True)
        raise HTTPException(status_code=500, detail={"error": "Failed to reduce basis", "details": str(e)})
