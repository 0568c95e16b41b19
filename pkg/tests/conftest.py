import os
import pytest

from config import get_settings
from paramlat import ParamBasis
from polyring import Poly

PROBLEMS_DIR = os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), "problems")

T = Poly.t()


def problem_path(name: str) -> str:
    return os.path.join(PROBLEMS_DIR, f"{name}.json")


@pytest.fixture(autouse=True)
def fresh_settings():
    get_settings.cache_clear()
    yield
    get_settings.cache_clear()


@pytest.fixture
def intro1():
    """(t, 2), (1, t^2)"""
    return ParamBasis([[T, 2], [1, T * T]])


@pytest.fixture
def intro2():
    """(3, 0), (2t, 1)"""
    return ParamBasis([[3, 0], [T * 2, 1]])


@pytest.fixture
def problem_file():
    return problem_path
