import math

from fastapi.testclient import TestClient

from api.metrics import metrics
from api.server import app

client = TestClient(app)


def test_health_and_metrics():
    assert client.get("/health").json() == {"ok": True}
    metrics.inc("pipeline_runs_total", labels={"command": "sweep"})
    body = client.get("/metrics").text
    assert "# TYPE pipeline_runs_total counter" in body
    assert 'pipeline_runs_total{command="sweep"}' in body


def test_classify_endpoint():
    r = client.post("/classify", json={"m": 1, "k": 1, "f_hz": 15000.0})
    assert r.status_code == 200
    body = r.json()
    assert body["case"] == "Case3"
    assert body["gamma1"] == 1.0 and body["gamma2"] < 0

    r = client.post("/classify", json={"m": 0, "k": 0, "f_hz": 15000.0})
    assert r.json()["case"] == "KZero" and r.json()["gamma2"] is None


def test_solve_endpoint_matches_boundary_conditions():
    payload = {"bvp": "BVP1", "m": 2, "k": 1, "f_hz": 28000.0, "amp_a_pa": 1e5, "amp_b_pa": 1e5, "amp_c_pa": 1e5}
    before = metrics.counter("solves_total", {"method": "closed_form"})
    r = client.post("/solve", json=payload)
    assert r.status_code == 200
    body = r.json()
    assert len(body["amplitudes"]) == 3
    assert body["boundary_residual"] <= 1e-10
    assert len(body["displacement"]) == 3 and len(body["stress"]) == 6
    assert metrics.counter("solves_total", {"method": "closed_form"}) == before + 1

    generic = client.post("/solve", json={**payload, "method": "generic"}).json()
    for a, b in zip(body["amplitudes"], generic["amplitudes"]):
        assert math.isclose(a, b, rel_tol=1e-9)


def test_solve_errors_map_to_status_codes():
    # exactly on the shear boundary for k = 1
    f_s = (math.pi / 0.15) * math.sqrt(7.308e10 / 8000.0) / (2 * math.pi)
    r = client.post("/solve", json={"m": 1, "k": 1, "f_hz": f_s, "amp_a_pa": 1e5})
    assert r.status_code == 409
    r = client.post("/solve", json={"m": 1, "k": 1, "f_hz": 5000.0, "point": [0.2, 0.0, 0.01]})
    assert r.status_code == 422
    r = client.post("/solve", json={"m": 1, "k": 1, "f_hz": 5000.0, "material": {"preset": "unobtainium"}})
    assert r.status_code == 422
    r = client.post("/solve", json={"m": 1, "k": 1, "f_hz": -5.0})
    assert r.status_code == 422


def test_sweep_endpoint():
    payload = {"m": 1, "k": [1], "f_start_hz": 1000.0, "f_stop_hz": 1050.0, "f_step_hz": 10.0, "amp_a_pa": 1e5}
    r = client.post("/sweep", json=payload)
    assert r.status_code == 200
    body = r.json()
    assert body["columns"][0] == "f_hz" and body["columns"][-1] == "status"
    assert len(body["rows"]) == 6

    too_big = {**payload, "f_stop_hz": 1.0e6, "f_step_hz": 1.0}
    assert client.post("/sweep", json=too_big).status_code == 422


def test_resonances_endpoint():
    payload = {"m": 1, "k": [1], "f_start_hz": 5000.0, "f_stop_hz": 7000.0, "f_step_hz": 20.0}
    r = client.post("/resonances", json=payload)
    assert r.status_code == 200
    body = r.json()
    assert body["bvp"] == "BVP2" and body["m"] == 1
    for rec in body["resonances"]:
        assert 5000.0 <= rec["f_hz"] <= 7000.0


def test_histograms_keep_running_aggregates_only():
    before_count, before_total = metrics.summary("unit_duration_seconds", {"step": "a"})
    for _ in range(5000):
        metrics.observe("unit_duration_seconds", 0.002, labels={"step": "a"})
    count, total = metrics.summary("unit_duration_seconds", {"step": "a"})
    assert count == before_count + 5000
    assert math.isclose(total - before_total, 10.0, rel_tol=1e-9)
    stored = metrics.histograms['unit_duration_seconds{step="a"}']
    assert not hasattr(stored, "__len__")
    body = metrics.generate_prometheus_output()
    assert f'unit_duration_seconds_count{{step="a"}} {count}' in body
    assert "# TYPE unit_duration_seconds histogram" in body
