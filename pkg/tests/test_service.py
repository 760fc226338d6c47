import base64
import hashlib
import random

import pytest
from fastapi.testclient import TestClient

from teleact.params import design_to_dict, with_resolution
from teleact.presets import baseline, preset_names
from teleact.service import MESH_SIZE_CAP_BYTES, create_app


@pytest.fixture(scope="module")
def client():
    return TestClient(create_app())


def _fast_doc():
    design = with_resolution(
        baseline(), angular_step_deg=30.0, contour_points=64, samples_per_segment=32
    )
    return design_to_dict(design)


class TestHealthAndPresets:
    def test_healthz(self, client):
        response = client.get("/healthz")
        assert response.status_code == 200
        assert response.json()["status"] == "ok"

    def test_presets_lists_all_fifteen(self, client):
        body = client.get("/api/presets").json()
        names = [p["name"] for p in body["presets"]]
        assert names == preset_names()
        assert len(names) == 15
        assert all("sections" in p["params"] for p in body["presets"])


class TestBendEndpoint:
    def test_worked_example(self, client):
        response = client.post("/api/bend", json={"s0": 100, "s1": 120, "r": 20})
        assert response.status_code == 200
        body = response.json()
        assert body["x_mm"] == pytest.approx(55.0)
        assert body["h_mm"] == pytest.approx(93.675, abs=1e-3)
        assert body["theta_deg"] == pytest.approx(30.42, abs=0.01)

    def test_symmetric_zero_theta(self, client):
        body = client.post("/api/bend", json={"s0": 50, "s1": 50, "r": 20}).json()
        assert body["theta_deg"] == 0.0

    def test_infeasible_geometry_422(self, client):
        response = client.post("/api/bend", json={"s0": 10, "s1": 100, "r": 1})
        assert response.status_code == 422
        assert "no tilted cone" in response.json()["errors"][0]

    def test_non_numeric_field_422(self, client):
        response = client.post("/api/bend", json={"s0": "wide", "s1": 100, "r": 1})
        assert response.status_code == 422

    def test_malformed_json_400(self, client):
        response = client.post(
            "/api/bend", content=b"{nope", headers={"content-type": "application/json"}
        )
        assert response.status_code == 400


class TestGenerateEndpoint:
    def test_baseline_generates_watertight_mesh(self, client):
        response = client.post("/api/generate", json=_fast_doc())
        assert response.status_code == 200
        body = response.json()
        assert body["diagnostics"]["watertight"] is True
        stl = base64.b64decode(body["mesh_stl_base64"])
        assert len(stl) == 84 + 50 * body["diagnostics"]["n_triangles"]
        assert body["bend"]["theta_deg"] == 0.0
        assert set(body["metrics"]) == {
            "axial_expansion_ratio", "radial_expansion_ratio",
            "mesh_volume_mm3", "arc_length_ratio", "bend_theta_deg",
        }

    def test_invalid_amplitude_422_with_error_list(self, client):
        doc = _fast_doc()
        doc["sections"][0]["midline"]["amplitude"] = -1
        response = client.post("/api/generate", json=doc)
        assert response.status_code == 422
        assert any("amplitude must be > 0" in e for e in response.json()["errors"])

    def test_all_violations_listed(self, client):
        doc = _fast_doc()
        doc["sections"][0]["midline"]["amplitude"] = -1
        doc["sections"][0]["thickness"]["max_thickness"] = 0
        errors = client.post("/api/generate", json=doc).json()["errors"]
        assert len(errors) == 2

    def test_malformed_json_400(self, client):
        response = client.post(
            "/api/generate", content=b"not json", headers={"content-type": "application/json"}
        )
        assert response.status_code == 400

    def test_oversized_mesh_413(self, client):
        doc = _fast_doc()
        doc["resolution"]["angular_step_deg"] = 0.25
        doc["resolution"]["contour_points"] = 512
        response = client.post("/api/generate", json=doc)
        assert response.status_code == 413
        estimated = 84 + 50 * 2 * (360 * 4) * 512
        assert estimated > MESH_SIZE_CAP_BYTES  # sanity of the test itself

    def test_stateless_shuffled_replay(self, client):
        requests = [
            ("/api/bend", {"s0": 100, "s1": 120, "r": 20}),
            ("/api/bend", {"s0": 80, "s1": 81, "r": 10}),
            ("/api/generate", _fast_doc()),
        ]
        first = {}
        for path, body in requests:
            first[path, repr(body)] = client.post(path, json=body).content
        shuffled = list(requests)
        random.Random(11).shuffle(shuffled)
        for path, body in shuffled:
            assert client.post(path, json=body).content == first[path, repr(body)]

    def test_mesh_digest_matches_cli_export(self, client, tmp_path):
        from teleact.cli import main

        response = client.post("/api/generate", json=_fast_doc())
        service_stl = base64.b64decode(response.json()["mesh_stl_base64"])

        out = tmp_path / "cli.stl"
        main(["generate", "--preset", "BAS", "--out", str(out),
              "--angular-step", "30", "--contour-points", "64", "--samples-per-segment", "32"])
        assert hashlib.sha256(service_stl).hexdigest() == hashlib.sha256(out.read_bytes()).hexdigest()
