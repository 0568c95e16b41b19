"""Problem file routes. Handlers are plain def and run in the threadpool; loading is file I/O."""
from fastapi import APIRouter, HTTPException
from models import ProblemFile
from problemstore import fetch_problem, list_problems
from errors import ParamLatError
import logging

router = APIRouter()
logger = logging.getLogger(__name__)

@router.get("/problems")
def get_problems():
    """List the bundled problem files."""
    return {"problems": list_problems()}

@router.get("/problems/{name}", response_model=ProblemFile, response_model_exclude_none=True)
def get_problem(name: str):
    """Fetch one bundled problem file."""
    try:
        return fetch_problem(name)
    except HTTPException:
        raise
    except ParamLatError as e:
        logger.error(f"Error in get_problem: {str(e)}", exc_info=True)
        raise HTTPException(status_code=500, detail={"error": "Bundled problem is malformed", "details": str(e)})
