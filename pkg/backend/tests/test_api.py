import pytest
from fastapi.testclient import TestClient

from main import app

SMALL = {"segments": [2, 3], "max_len": 5, "domain": "0,1,2,3", "jobs": 1}


@pytest.fixture(scope="module")
def client():
    with TestClient(app) as c:
        yield c


def test_status(client):
    response = client.get("/api/v1/status")
    assert response.status_code == 200
    body = response.json()
    assert body["status"] == "healthy"
    assert body["service"] == "GraSSP"
    assert "segments" in body["defaults"]


def test_list_benchmarks(client):
    response = client.get("/api/v1/benchmarks")
    assert response.status_code == 200
    names = [b["name"] for b in response.json()]
    assert len(names) == 8
    assert "alternating-sum" in names
    assert "seen-2-after-1" in names


def test_get_benchmark(client):
    body = client.get("/api/v1/benchmarks/alternation-of-11-22").json()
    assert body["terminator"] == "eof"
    assert body["expected"] == "SyntCondPrefix min (= elem eof)"
    assert "(program alternation-of-11-22" in body["source"]


def test_unknown_benchmark_is_404(client):
    response = client.get("/api/v1/benchmarks/nope")
    assert response.status_code == 404
    assert "array-max" in response.json()["available"]


def test_synthesize_program_source(client):
    source = "(program array-max (state (m -inf)) (step (m (max elem m))) (output m))"
    response = client.post("/api/v1/synthesize", json={"program": source, "config": SMALL})
    assert response.status_code == 200
    body = response.json()
    assert body["found"] is True
    assert body["hypothesis"] == "SyntNoPrefix"
    assert body["decomposition"]["merge"] == "max"


def test_synthesize_needs_exactly_one_source(client):
    response = client.post("/api/v1/synthesize", json={"config": SMALL})
    assert response.status_code == 422


def test_syntax_error_is_400(client):
    response = client.post("/api/v1/synthesize", json={"program": "(program p (state (x 0))", "config": SMALL})
    assert response.status_code == 400
    assert response.json()["line"] == 1


def test_invalid_program_is_400(client):
    source = "(program p (state (x 0)) (step (x elem)) (output elem))"
    response = client.post("/api/v1/synthesize", json={"program": source})
    assert response.status_code == 400
    assert "output uses current input" in response.json()["detail"]


def test_verify_counterexample(client):
    response = client.post(
        "/api/v1/verify",
        json={"benchmark": "is-sorted", "decomposition": {"merge": "min"}, "config": SMALL},
    )
    assert response.status_code == 200
    body = response.json()
    assert body["kind"] == "counterexample"
    assert body["segments"] == [[1], [0]]
    assert (body["expected"], body["actual"]) == (0, 1)


def test_verify_conditional_prefix(client):
    response = client.post(
        "/api/v1/verify",
        json={
            "benchmark": "seen-2-after-1",
            "decomposition": {"merge": "max", "prefix_cond": "(= elem 2)"},
            "config": SMALL,
        },
    )
    assert response.json()["kind"] == "valid"


def test_bad_config_is_400(client):
    response = client.post(
        "/api/v1/verify",
        json={"benchmark": "is-sorted", "decomposition": {"merge": "min"}, "config": {"timeout": -1}},
    )
    assert response.status_code == 400


def test_run(client):
    response = client.post(
        "/api/v1/run",
        json={
            "benchmark": "array-max",
            "decomposition": {"merge": "max"},
            "input": "3 1 2",
            "segments": 2,
            "workers": 2,
        },
    )
    assert response.status_code == 200
    body = response.json()
    assert body["output"] == 3
    assert body["report"]["s"] == [2, 1]
    assert body["report"]["X"] == "3/4"
    assert body["report"]["cross_check"] is True
