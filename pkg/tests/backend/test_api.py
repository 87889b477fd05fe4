"""
Tests for the HTTP service.
"""
import pytest
from fastapi.testclient import TestClient

from app_main import app

from conftest import COMP_ONLY_ROWS, make_task_set


@pytest.fixture(scope="module")
def client():
    with TestClient(app) as test_client:
        yield test_client


@pytest.fixture
def comp_only_set_document():
    return make_task_set(COMP_ONLY_ROWS).to_document()


class TestServiceInfo:
    def test_root(self, client):
        response = client.get("/")
        assert response.status_code == 200
        body = response.json()
        assert body["status"] == "active"
        assert body["endpoints"]["solve"] == "/v1/solve"

    def test_health(self, client):
        body = client.get("/health").json()
        assert body["status"] == "healthy"
        assert body["policies"] == ["npedf", "npfp", "pedf"]
        assert "comp" in body["algorithms"]

    def test_algorithms(self, client):
        assert set(client.get("/v1/solve/algorithms").json()) == {"comp", "case", "ia3", "pdpa", "cam"}


class TestSolve:
    def test_comp_on_worked_example(self, client, comp_only_set_document):
        response = client.post("/v1/solve", json={"task_set": comp_only_set_document, "algorithm": "comp"})
        assert response.status_code == 200
        body = response.json()
        assert body["solution"]["task_alloc"] == [[0, 1], [2, 3]]
        assert body["solution"]["cache_part"] == [2, 2]
        assert body["policy"] == "npfp"

    def test_case_finds_nothing(self, client, comp_only_set_document):
        body = client.post("/v1/solve", json={"task_set": comp_only_set_document, "algorithm": "case"}).json()
        assert body["solution"] is None
        assert body["timed_out"] is False

    def test_minimize_keeps_a_valid_grant(self, client, comp_only_set_document):
        body = client.post(
            "/v1/solve", json={"task_set": comp_only_set_document, "algorithm": "ia3", "minimize": True}
        ).json()
        assert body["solution"]["total_cache_used"] == 4

    def test_both_is_not_an_allocator(self, client, comp_only_set_document):
        response = client.post("/v1/solve", json={"task_set": comp_only_set_document, "algorithm": "both"})
        assert response.status_code == 400

    def test_malformed_document(self, client):
        response = client.post("/v1/solve", json={"task_set": {"n_cores": 2}})
        assert response.status_code == 422

    def test_invalid_profile(self, client, comp_only_set_document):
        comp_only_set_document["tasks"][0]["eps"] = [3, 2, 1, 0]
        response = client.post("/v1/solve", json={"task_set": comp_only_set_document})
        assert response.status_code == 422

    def test_unknown_policy(self, client, comp_only_set_document):
        response = client.post("/v1/solve", json={"task_set": comp_only_set_document, "policy": "rm"})
        assert response.status_code == 422


class TestAnalysis:
    def test_response_times(self, client):
        response = client.post(
            "/v1/analysis/response-times",
            json={"tasks": [{"period": 100, "exec": 35}, {"period": 150, "exec": 48}]},
        )
        assert response.status_code == 200
        body = response.json()
        assert body["response_times"] == {"0": 83, "1": 83}
        assert body["schedulable"] is True

    def test_explicit_ids(self, client):
        body = client.post(
            "/v1/analysis/response-times",
            json={"tasks": [{"period": 200, "exec": 35, "task_id": 7}, {"period": 250, "exec": 65, "task_id": 3}]},
        ).json()
        assert body["response_times"]["3"] == 100

    def test_duplicate_ids(self, client):
        response = client.post(
            "/v1/analysis/response-times",
            json={"tasks": [{"period": 10, "exec": 1, "task_id": 1}, {"period": 20, "exec": 1, "task_id": 1}]},
        )
        assert response.status_code == 400

    @pytest.mark.parametrize("policy,expected", [("npfp", False), ("npedf", True), ("pedf", True)])
    def test_schedulable_per_policy(self, client, policy, expected):
        body = client.post(
            "/v1/analysis/schedulable",
            json={"tasks": [{"period": 10, "exec": 5}, {"period": 100, "exec": 6}], "policy": policy},
        ).json()
        assert body["schedulable"] is expected
        assert body["utilization"] == pytest.approx(0.56)

    def test_empty_core(self, client):
        assert client.post("/v1/analysis/schedulable", json={"tasks": []}).status_code == 422


class TestVerify:
    def test_worked_example_is_feasible(self, client, comp_only_set_document):
        body = client.post("/v1/verify", json={"task_set": comp_only_set_document}).json()
        assert body["exists_schedulable"] is True
        assert body["explored"] >= 1

    def test_too_large(self, client):
        document = make_task_set([(100, [10, 9, 8, 7])] * 12).to_document()
        response = client.post("/v1/verify", json={"task_set": document})
        assert response.status_code == 400
