import inspect
import json

import pytest
from fastapi.routing import APIRoute
from fastapi.testclient import TestClient

from main import app

client = TestClient(app)


@pytest.fixture
def load(problem_file):
    def _load(name):
        with open(problem_file(name), "r", encoding="utf-8") as f:
            return json.load(f)
    return _load


def test_health_check():
    response = client.get("/")
    assert response.status_code == 200
    assert response.json() == {"status": "API is working!"}


def test_list_and_fetch_problems():
    response = client.get("/problems")
    assert response.status_code == 200
    names = {p["name"] for p in response.json()["problems"]}
    assert {"intro1", "intro2", "nearest", "constant"} <= names
    problem = client.get("/problems/intro1")
    assert problem.status_code == 200
    assert problem.json()["m"] == 2
    assert client.get("/problems/missing").status_code == 404
    assert client.get("/problems/bad.name").status_code == 400


def test_reduce(load):
    response = client.post("/reduce", json={"problem": load("intro2")})
    assert response.status_code == 200
    data = response.json()
    assert data["modulus"] == 3
    assert data["verification"]["passed"]
    assert data["verified_samples"]


def test_reduce_rejects_a_malformed_problem():
    response = client.post("/reduce", json={"problem": {"m": 2, "basis": [[["1"]]]}})
    assert response.status_code == 422


def test_reduce_rejects_dependent_vectors():
    problem = {"m": 2, "basis": [[["0", "1"], ["1"]], [["0", "2"], ["2"]]]}
    response = client.post("/reduce", json={"problem": problem})
    assert response.status_code == 400
    assert response.json()["detail"]["error"] == "RankDeficient"


def test_svp(load):
    response = client.post("/svp", json={"problem": load("intro1")})
    assert response.status_code == 200
    data = response.json()
    assert data["problem"] == "svp"
    assert data["formula"]["leaves"][0]["vector_t"] == [["0", "1"], ["2"]]
    assert data["verification"]["passed"]


def test_cvp(load):
    response = client.post("/cvp", json={"problem": load("nearest"), "samples": 2})
    assert response.status_code == 200
    assert response.json()["verification"]["passed"]
    missing = client.post("/cvp", json={"problem": load("intro1")})
    assert missing.status_code == 422
    assert missing.json()["detail"]["error"] == "MissingTarget"


def test_oracle(load):
    response = client.post("/oracle", json={"problem": load("intro2"), "at": 7})
    assert response.status_code == 200
    assert response.json()["value"] == "2"
    assert client.post("/oracle", json={"problem": load("intro2"), "at": -1}).status_code == 422


def test_verify(load):
    response = client.post("/verify", json={"problem": load("intro1"), "samples": 2})
    assert response.status_code == 200
    assert response.json()["passed"]


def test_verify_fuzz():
    assert client.post("/verify/fuzz", json={"seed": 1, "trials": 0}).status_code == 400
    response = client.post("/verify/fuzz", json={"seed": 2, "trials": 1, "samples": 1})
    assert response.status_code == 200
    assert response.json()["seed"] == 2


def test_endpoint_handlers_run_in_the_threadpool():
    routes = [r for r in app.routes if isinstance(r, APIRoute) and r.endpoint.__module__.startswith("endpoints.")]
    assert {r.endpoint.__module__ for r in routes} == {
        "endpoints.problems", "endpoints.reduce", "endpoints.solve", "endpoints.verify",
    }
    for route in routes:
        assert not inspect.iscoroutinefunction(route.endpoint), route.path
