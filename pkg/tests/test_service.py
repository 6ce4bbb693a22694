import copy
import json
from datetime import datetime, timedelta, timezone
from fractions import Fraction

import pytest
from fastapi.testclient import TestClient

from rads.documents import report_to_json, scenario_to_json, validate_scenario
from rads.engine import evaluate
from rads.service import create_app
from rads.store import IncidentStore


@pytest.fixture()
def store(tmp_path):
    return IncidentStore(tmp_path / "store")


@pytest.fixture()
def client(store):
    return TestClient(create_app(store))


@pytest.fixture()
def posted(client, crown_doc):
    attack = (datetime.now(timezone.utc) - timedelta(days=5)).isoformat()
    response = client.post(
        "/api/incidents",
        params={"detected_at": attack},
        json=crown_doc,
        headers={"X-Actor": "alice"},
    )
    assert response.status_code == 201
    return response.json()


class TestIncidentCrud:
    def test_create_returns_id_and_version(self, posted):
        assert posted == {"id": "crown-2024-001", "version": 1}

    def test_create_rejects_invalid_document(self, client, crown_doc):
        doc = copy.deepcopy(crown_doc)
        doc["weights"]["reference"] = "19"
        response = client.post("/api/incidents", json=doc)
        assert response.status_code == 400
        body = response.json()
        assert body["code"] == "ValidationFailed"
        assert body["violations"][0]["code"] == "WeightSumError"

    def test_create_duplicate_conflicts(self, client, crown_doc, posted):
        response = client.post("/api/incidents", json=crown_doc)
        assert response.status_code == 409
        assert response.json()["code"] == "VersionConflict"

    def test_get_scenario_is_canonical(self, client, crown_doc, posted):
        response = client.get("/api/incidents/crown-2024-001")
        assert response.status_code == 200
        scenario = validate_scenario(crown_doc).scenario
        assert response.content == scenario_to_json(scenario)

    def test_get_unknown_404(self, client):
        response = client.get("/api/incidents/nope")
        assert response.status_code == 404
        assert response.json()["code"] == "NotFound"

    def test_list_incidents(self, client, posted):
        response = client.get("/api/incidents")
        assert response.status_code == 200
        summaries = response.json()
        assert len(summaries) == 1
        assert summaries[0]["id"] == "crown-2024-001"
        assert summaries[0]["status"] == "open"

    def test_bad_json_body_is_400(self, client):
        response = client.post(
            "/api/incidents", content=b"{not json", headers={"Content-Type": "application/json"}
        )
        assert response.status_code == 400
        assert response.json()["code"] == "ParseError"


class TestWrites:
    WEIGHTS = {
        "impact": "25", "feasibility": "25", "effort_time": "10",
        "effort_cost": "10", "framing": "15", "reference": "15",
    }

    def test_put_weights_bumps_version(self, client, posted):
        response = client.put(
            "/api/incidents/crown-2024-001/weights",
            json={"weights": self.WEIGHTS, "base_version": 1},
            headers={"X-Actor": "bob"},
        )
        assert response.status_code == 200
        assert response.json() == {"id": "crown-2024-001", "version": 2}
        scenario = client.get("/api/incidents/crown-2024-001").json()
        assert scenario["weights"]["impact"] == "25"

    def test_put_weights_sum_99_rejected(self, client, posted):
        bad = dict(self.WEIGHTS, reference="14")
        response = client.put(
            "/api/incidents/crown-2024-001/weights",
            json={"weights": bad, "base_version": 1},
        )
        assert response.status_code == 400
        body = response.json()
        assert body["violations"][0]["code"] == "WeightSumError"
        assert "weights sum to 99" in body["violations"][0]["message"]

    def test_stale_base_version_409(self, client, posted):
        first = client.put(
            "/api/incidents/crown-2024-001/weights",
            json={"weights": self.WEIGHTS, "base_version": 1},
        )
        assert first.status_code == 200
        second = client.put(
            "/api/incidents/crown-2024-001/weights",
            json={"weights": self.WEIGHTS, "base_version": 1},
        )
        assert second.status_code == 409
        assert second.json()["code"] == "VersionConflict"
        # losing write changed nothing
        assert client.get("/api/incidents/crown-2024-001").json()["weights"]["impact"] == "25"

    def test_put_assessment(self, client, posted):
        assessment = {
            "impact": "1", "feasibility": "0", "effort_time": "1",
            "effort_cost": "1", "framing": "0", "reference": "0.5",
        }
        response = client.put(
            "/api/incidents/crown-2024-001/applications/low-01/assessment",
            json={"assessment": assessment, "base_version": 1},
        )
        assert response.status_code == 200
        scenario = client.get("/api/incidents/crown-2024-001").json()
        app = next(a for a in scenario["applications"] if a["id"] == "low-01")
        assert app["assessment"]["impact"] == "1"

    def test_put_assessment_unknown_app_404(self, client, posted):
        assessment = {k: "0" for k in
                      ("impact", "feasibility", "effort_time", "effort_cost", "framing", "reference")}
        response = client.put(
            "/api/incidents/crown-2024-001/applications/ghost/assessment",
            json={"assessment": assessment, "base_version": 1},
        )
        assert response.status_code == 404

    def test_put_assessment_out_of_range_400(self, client, posted):
        assessment = {k: "0" for k in
                      ("impact", "feasibility", "effort_time", "effort_cost", "framing", "reference")}
        assessment["impact"] = "1.2"
        response = client.put(
            "/api/incidents/crown-2024-001/applications/low-01/assessment",
            json={"assessment": assessment, "base_version": 1},
        )
        assert response.status_code == 400
        assert response.json()["violations"][0]["code"] == "RangeError"

    def test_missing_base_version_400(self, client, posted):
        response = client.put(
            "/api/incidents/crown-2024-001/weights", json={"weights": self.WEIGHTS}
        )
        assert response.status_code == 400

    def test_writes_append_audit(self, client, store, posted):
        client.put(
            "/api/incidents/crown-2024-001/weights",
            json={"weights": self.WEIGHTS, "base_version": 1},
            headers={"X-Actor": "bob"},
        )
        entries = store.read_audit("crown-2024-001")
        assert entries[0].actor == "alice"
        assert entries[-1].actor == "bob"
        assert "weights updated" in entries[-1].summary


class TestDecisionAndSweep:
    def test_decision_matches_direct_engine_call(self, client, crown_doc, posted):
        response = client.get("/api/incidents/crown-2024-001/decision?day=0")
        assert response.status_code == 200
        scenario = validate_scenario(crown_doc).scenario
        assert response.content == report_to_json(evaluate(scenario, 0))

    def test_decision_persisted_for_reproducibility(self, client, store, posted):
        client.get("/api/incidents/crown-2024-001/decision?day=7")
        raw = store.load_report_bytes("crown-2024-001", 1, Fraction(7))
        assert json.loads(raw)["ransom_now"]["amount"] == 2_000_000_000

    def test_decision_bad_day_400(self, client, posted):
        assert client.get("/api/incidents/crown-2024-001/decision?day=x").status_code == 400
        assert client.get("/api/incidents/crown-2024-001/decision?day=-1").status_code == 400

    def test_sweep_threshold(self, client, posted):
        response = client.post(
            "/api/incidents/crown-2024-001/sweep",
            json={"quantity": "threshold", "grid": ["30", "35", "40"]},
        )
        assert response.status_code == 200
        body = response.json()
        pay_counts = [
            sum(1 for row in point["report"]["rows"] if row["decision"] == "Pay")
            for point in body["points"]
        ]
        assert pay_counts == [16, 1, 0]

    def test_sweep_bad_request_400(self, client, posted):
        response = client.post(
            "/api/incidents/crown-2024-001/sweep",
            json={"quantity": "threshold", "grid": []},
        )
        assert response.status_code == 400

    def test_sweep_infeasible_422(self, client, store, crown_doc):
        doc = copy.deepcopy(crown_doc)
        doc["id"] = "lopsided"
        doc["weights"] = {
            "impact": "100", "feasibility": "0", "effort_time": "0",
            "effort_cost": "0", "framing": "0", "reference": "0",
        }
        assert client.post("/api/incidents", json=doc).status_code == 201
        response = client.post(
            "/api/incidents/lopsided/sweep",
            json={"quantity": "weight:impact", "grid": ["50"]},
        )
        assert response.status_code == 422
        assert response.json()["code"] == "InfeasibleSweep"


class TestCountdownAndDerive:
    def test_countdown(self, client, posted):
        response = client.get("/api/incidents/crown-2024-001/countdown")
        assert response.status_code == 200
        body = response.json()
        assert body["expired"] is False
        assert body["current_amount"] == 1_000_000_000
        assert body["next_amount"] == 2_000_000_000
        # attacked 5 days ago, next doubling at day 7
        assert Fraction(body["days_to_next_doubling"]) <= 2
        assert Fraction(body["elapsed_days"]) >= 5

    def test_countdown_clock_skew_400(self, client, crown_doc):
        future = (datetime.now(timezone.utc) + timedelta(days=2)).isoformat()
        client.post("/api/incidents", params={"detected_at": future}, json=crown_doc)
        response = client.get("/api/incidents/crown-2024-001/countdown")
        assert response.status_code == 400
        assert response.json()["code"] == "ClockSkew"

    def test_derive_framing_from_scenario(self, client, posted):
        response = client.post("/api/incidents/crown-2024-001/derive/framing", json={})
        assert response.status_code == 200
        # deadline 28 vs recovery 10: not urgent, but time-limited
        assert response.json() == {"value": "0.5"}

    def test_derive_framing_with_facts(self, client, posted):
        response = client.post(
            "/api/incidents/crown-2024-001/derive/framing",
            json={"deadline_days": None},
        )
        assert response.json() == {"value": "0"}
        response = client.post(
            "/api/incidents/crown-2024-001/derive/framing",
            json={"deadline_days": "1", "estimated_recovery_days": "10"},
        )
        assert response.json() == {"value": "1"}

    def test_derive_reference_empty_history(self, client, posted):
        response = client.post("/api/incidents/crown-2024-001/derive/reference", json={})
        assert response.json() == {"value": "0"}

    def test_derive_reference_ambiguous_422(self, client, posted):
        history = [
            {"date": "2023-01-01", "summary": "a", "handled": "Sufficient"},
            {"date": "2023-06-01", "summary": "b", "handled": "NotApplicable"},
        ]
        response = client.post(
            "/api/incidents/crown-2024-001/derive/reference", json={"history": history}
        )
        assert response.status_code == 422
        assert response.json()["code"] == "HistoryAmbiguous"

    def test_derive_feasibility_from_scenario_backups(self, client, posted):
        response = client.post("/api/incidents/crown-2024-001/derive/feasibility", json={})
        assert response.json() == {"value": "0.75"}

    def test_derive_feasibility_with_facts(self, client, posted):
        response = client.post(
            "/api/incidents/crown-2024-001/derive/feasibility",
            json={"coverage_fraction": "1", "last_backup_age_days": 1, "backup_cadence_days": 7},
        )
        assert response.json() == {"value": "1"}

    def test_derive_unknown_kind_404(self, client, posted):
        response = client.post("/api/incidents/crown-2024-001/derive/impact", json={})
        assert response.status_code == 404
