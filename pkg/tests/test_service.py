"""Wire-level tests of the FastAPI service."""

import math

import pytest
from fastapi.testclient import TestClient

from twomode.basis import waveplate
from twomode.gaussian import vacuum
from twomode.model import KerrSpectrumParams, linear_case_state
from twomode.schemas import StatePayload
from twomode.service import app

client = TestClient(app)


def state_json(state):
    return StatePayload.from_state(state).model_dump()


def pm45_json():
    xy = linear_case_state(KerrSpectrumParams(), 5.0)
    return state_json(waveplate("half", math.pi / 8).apply(xy))


def test_health():
    reply = client.get("/health")
    assert reply.status_code == 200
    assert reply.json()["status"] == "ok"


class TestAnalyzeEndpoint:
    def test_vacuum(self):
        reply = client.post("/analyze", json={"state": state_json(vacuum())})
        assert reply.status_code == 200
        body = reply.json()
        assert body["input_basis"]["i_min"] == pytest.approx(2.0)
        assert body["input_basis"]["separable_verdict"] is True
        assert body["sigma_min"] == pytest.approx(2.0)

    def test_calibrated_linear_state(self):
        xy = linear_case_state(KerrSpectrumParams(), 5.0)
        reply = client.post("/analyze", json={"state": state_json(xy)})
        assert reply.status_code == 200
        body = reply.json()
        assert body["maximal"]["report"]["i_min"] == pytest.approx(1.90, abs=1e-10)
        dirs = {tuple(round(x, 9) for x in d) for d in body["maximal"]["stokes_directions"]}
        assert dirs == {(0.0, 1.0, 0.0), (0.0, -1.0, 0.0)}

    def test_unphysical_state_rejected_with_named_invariant(self):
        bad = state_json(vacuum())
        bad["n_a"] = 0.5
        reply = client.post("/analyze", json={"state": bad})
        assert reply.status_code == 422
        assert "uncertainty" in reply.json()["detail"]

    def test_unknown_field_rejected(self):
        payload = {"state": state_json(vacuum()), "bogus": 1}
        reply = client.post("/analyze", json=payload)
        assert reply.status_code == 422


class TestSweepEndpoint:
    def test_vacuum_sweep(self):
        reply = client.post(
            "/sweep", json={"state": state_json(vacuum()), "n_lat": 3, "n_lon": 4}
        )
        assert reply.status_code == 200
        rows = reply.json()["rows"]
        assert len(rows) == 12
        assert all(row[3] == pytest.approx(2.0) for row in rows)

    def test_resolution_validated(self):
        reply = client.post(
            "/sweep", json={"state": state_json(vacuum()), "n_lat": 1, "n_lon": 4}
        )
        assert reply.status_code == 422


class TestModelEndpoint:
    def test_linear_sweep(self):
        reply = client.post(
            "/model",
            json={"params": KerrSpectrumParams().to_dict(), "case": "linear",
                  "freqs_mhz": [3.0, 5.0, 12.0]},
        )
        assert reply.status_code == 200
        rows = reply.json()["rows"]
        assert len(rows) == 3
        at5 = rows[1]
        assert at5["v_min_x"] == pytest.approx(0.95, abs=1e-12)
        assert at5["i_star"] == pytest.approx(1.90, abs=1e-10)

    def test_bad_case_rejected(self):
        reply = client.post(
            "/model",
            json={"params": KerrSpectrumParams().to_dict(), "case": "elliptical",
                  "freqs_mhz": [5.0]},
        )
        assert reply.status_code == 422

    def test_descending_freqs_rejected(self):
        reply = client.post(
            "/model",
            json={"params": KerrSpectrumParams().to_dict(), "case": "linear",
                  "freqs_mhz": [5.0, 4.0]},
        )
        assert reply.status_code == 422


class TestStokesEndpoint:
    def test_locked_analytic(self):
        reply = client.post(
            "/stokes", json={"state": pm45_json(), "alpha_lo": 10.0, "lock": True}
        )
        assert reply.status_code == 200
        body = reply.json()
        assert body["s_s2"] == pytest.approx(0.95, abs=1e-10)
        assert body["s_s3"] == pytest.approx(0.95, abs=1e-10)
        assert body["i_s_normalized"] == pytest.approx(1.90, abs=1e-10)
        assert body["entangled"] is True
        assert body["theta_b"] == pytest.approx(math.pi / 2)

    def test_requires_theta_or_lock(self):
        reply = client.post("/stokes", json={"state": pm45_json(), "alpha_lo": 10.0})
        assert reply.status_code == 422


class TestSimulateEndpoint:
    def test_deterministic_rows(self):
        request = {
            "state": pm45_json(),
            "seed": 4,
            "n_bins": 6,
            "samples_per_bin": 1000,
        }
        r1 = client.post("/simulate", json=request)
        r2 = client.post("/simulate", json=request)
        assert r1.status_code == 200
        assert r1.json() == r2.json()

    def test_insane_config_rejected(self):
        reply = client.post(
            "/simulate",
            json={"state": pm45_json(), "samples_per_bin": 10},
        )
        assert reply.status_code == 422


class TestOracleEndpoint:
    def test_random_batch(self):
        reply = client.post(
            "/oracle", json={"random_n": 2, "seed": 3, "grid_points": 21}
        )
        assert reply.status_code == 200
        body = reply.json()
        assert len(body["diffs"]) == 2
        assert body["max_m_uv_residual"] < 1e-10

    def test_requires_state_or_random(self):
        reply = client.post("/oracle", json={})
        assert reply.status_code == 422
