import os
import re
import logging
from typing import List, Dict
from fastapi import HTTPException

from errors import ParseError
from helpers import load_problem
from models import ProblemFile

logger = logging.getLogger(__name__)

PROBLEMS_DIR = os.path.join(os.path.dirname(__file__), "problems")
NAME_PATTERN = re.compile(r"^[A-Za-z0-9_\-]+$")

def problem_path(name: str) -> str:
    """Path of a bundled problem file; names are plain file stems."""
    if not NAME_PATTERN.match(name):
        raise HTTPException(status_code=400, detail=f"Invalid problem name: {name}")
    return os.path.join(PROBLEMS_DIR, f"{name}.json")

def list_problems() -> List[Dict[str, str]]:
    """List the bundled problem files with their descriptions."""
    problems = []
    if not os.path.isdir(PROBLEMS_DIR):
        logger.error(f"Problem directory missing: {PROBLEMS_DIR}")
        return problems
    for entry in sorted(os.listdir(PROBLEMS_DIR)):
        if not entry.endswith(".json"):
            continue
        name = entry[:-len(".json")]
        try:
            problem = load_problem(os.path.join(PROBLEMS_DIR, entry))
        except ParseError as e:
            logger.error(f"Skipping malformed problem {entry}: {str(e)}")
            continue
        problems.append({"name": name, "description": problem.description or ""})
    return problems

def fetch_problem(name: str) -> ProblemFile:
    """Fetch a bundled problem by name."""
    path = problem_path(name)
    if not os.path.isfile(path):
        raise HTTPException(status_code=404, detail="Problem not found")
    return load_problem(path)
