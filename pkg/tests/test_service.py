"""HTTP surface: the FastAPI app over the same handlers the CLI uses."""

from fastapi.testclient import TestClient

from loccalc.model import build_projective_space, model_to_dict
from loccalc.service.app import app

client = TestClient(app)


class TestHealth:
    def test_health(self):
        response = client.get("/health")
        assert response.status_code == 200
        body = response.json()
        assert body["status"] == "ok"


class TestBottEndpoint:
    def test_symbolic_projective_plane(self):
        response = client.post("/bott", json={
            "source": {"pn": 2}, "phi": "c1^2"})
        assert response.status_code == 200
        body = response.json()
        assert body["value"] == "9"
        assert body["is_constant"] is True
        assert body["tau_exponent"] == 0 and body["t_exponent"] == 0

    def test_inline_model_document(self):
        document = model_to_dict(build_projective_space(2, [0, 1, 3]))
        response = client.post("/bott", json={
            "source": {"model": document}, "phi": "c2"})
        assert response.status_code == 200
        assert response.json()["value"] == "3"

    def test_engine_error_maps_to_400(self):
        response = client.post("/bott", json={
            "source": {"pn": 2}, "phi": "c1"})
        assert response.status_code == 400
        assert "homogeneous" in response.json()["detail"]

    def test_schema_error_maps_to_422(self):
        response = client.post("/bott", json={"source": {"pn": "two"}, "phi": "c1^2"})
        assert response.status_code == 422

    def test_conflicting_sources_rejected(self):
        response = client.post("/bott", json={
            "source": {"pn": 2, "product": [1, 1]}, "phi": "c1^2"})
        assert response.status_code == 400
        assert "exactly one" in response.json()["detail"]


class TestOtherEndpoints:
    def test_carrell_liebermann(self):
        response = client.post("/cl", json={
            "source": {"pn": 2}, "p": "c1^2", "twist": 2})
        assert response.status_code == 200
        assert response.json()["value"] == "4"

    def test_baum_bott_roots(self):
        response = client.post("/baumbott", json={
            "p1_roots": "0,1,2", "phi": "c1"})
        assert response.status_code == 200
        assert response.json()["value"] == "3"

    def test_residue(self):
        response = client.post("/residue", json={
            "dim": 1, "components": ["z1^2"], "numerator": "z1"})
        assert response.status_code == 200
        body = response.json()
        assert abs(body["value_re"] - 1.0) <= 1e-9
        assert body["formatted"] == "1.000000000"

    def test_residue_bad_samples(self):
        response = client.post("/residue", json={
            "dim": 1, "components": ["z1"], "numerator": "1", "samples": 100})
        assert response.status_code == 400

    def test_dh(self):
        response = client.post("/dh")
        assert response.status_code == 200
        body = response.json()
        assert body["status"] == "pass"
        assert body["details"]["sign_relative_to_plus_2pi_i"] == 1

    def test_verify_selected(self):
        response = client.post("/verify", json={
            "scenarios": ["euler-characteristic-count", "empty-model-warning"]})
        assert response.status_code == 200
        body = response.json()
        assert body["all_passed"] is True
        assert [r["name"] for r in body["reports"]] == [
            "euler-characteristic-count", "empty-model-warning"]

    def test_model_validate(self):
        document = model_to_dict(build_projective_space(2))
        response = client.post("/model/validate", json={"model": document})
        assert response.status_code == 200
        body = response.json()
        assert body["valid"] is True and body["points"] == 3

    def test_model_validate_schema_error(self):
        response = client.post("/model/validate", json={"model": {"dim": 1}})
        assert response.status_code == 400
        assert "missing field" in response.json()["detail"]
