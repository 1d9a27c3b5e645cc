import warnings

import pytest

with warnings.catch_warnings():
    warnings.simplefilter("ignore")
    from fastapi.testclient import TestClient

from lfunlab.service import app


@pytest.fixture(scope="module")
def client():
    with TestClient(app) as c:
        yield c


def test_health(client):
    resp = client.get("/health")
    assert resp.status_code == 200
    assert resp.json()["status"] == "ok"


def test_lvalue_endpoint(client):
    resp = client.post("/lvalue", json={"q": 5, "d": "2,0,1"})
    assert resp.status_code == 200
    body = resp.json()
    assert body["coeffs"] == [1, -1]
    assert body["lambda"] == 1 and body["delta"] == 0
    assert body["completed"] == [1]
    assert body["central"]["a"] == "1" and body["central"]["b"] == "-1/5"
    assert abs(body["central"]["float"] - 0.5527864045) < 1e-9


def test_lvalue_rejects_bad_input(client):
    assert client.post("/lvalue", json={"q": 5, "d": "9,1"}).status_code == 400
    assert client.post("/lvalue", json={"q": 7, "d": "1,1"}).status_code == 400
    assert client.post("/lvalue", json={"q": 5, "d": "0,0,1"}).status_code == 400


def test_predict_endpoint(client):
    resp = client.post("/predict", json={"q": 5, "g": 2})
    assert resp.status_code == 200
    body = resp.json()
    assert body["sign_toggle"] == 1
    assert body["T3_exponent"] == "4/3"
    assert body["total"] == pytest.approx(body["T1"] + body["T2"] + body["T3"] + body["T4"])
    flipped = client.post("/predict", json={"q": 5, "g": 2, "sign_toggle": -1}).json()
    assert flipped["T1"] > body["T1"]  # zeta_A(1/2) < 0 so -1 enlarges the bracket


def test_constants_endpoint(client):
    resp = client.post("/constants", json={"q": 5, "cutoff_degree": 60})
    assert resp.status_code == 200
    body = resp.json()
    assert 0 < body["P1"] < 1
    assert body["zetaA_2"] == "5/4"
    assert body["zetaA_half"]["float"] < 0
    assert body["cutoff_degree"] == 60


def test_moment_endpoint(client):
    resp = client.post("/moment", json={"q": 5, "g": 0})
    assert resp.status_code == 200
    body = resp.json()
    assert body["exact"]["a"] == "20" and body["exact"]["b"] == "-4"
    assert body["ensemble_size"] == 20
    assert "elapsed_seconds" in body
    assert body["sign_resolution"] in (1, -1)


def test_moment_budget_400(client):
    resp = client.post("/moment", json={"q": 5, "g": 3, "max_cost_seconds": 0.5})
    assert resp.status_code == 400
    assert "estimated" in resp.json()["detail"]


def test_verify_endpoint(client):
    resp = client.post("/verify", json={"q": 5, "target": "parity", "g_max": 10})
    assert resp.status_code == 200
    assert resp.json()["passed"] is True
    resp = client.post("/verify", json={"q": 5, "target": "poisson", "max_fdeg": 2})
    assert resp.status_code == 200
    assert resp.json()["passed"] is True
    assert client.post("/verify", json={"q": 5, "target": "nope"}).status_code == 400


def test_report_endpoint(client):
    resp = client.post("/report", json={"q": 5, "g_max": 1})
    assert resp.status_code == 200
    body = resp.json()
    assert [r["g"] for r in body["reports"]] == [0, 1]
    assert body["sign_resolution_consistent"] is True
    assert body["version"]
