"""HTTP facade over the engine and the incident store.

A thin adapter: every response body is the same canonical JSON the
library produces directly. Writes carry an optimistic base_version and
append audit entries; the identity in the X-Actor header (default
"anonymous") is what lands in the audit log. Error bodies are always
{code, message, violations}.
"""

from __future__ import annotations

import json
import os
from dataclasses import replace
from datetime import datetime, timezone
from fractions import Fraction
from functools import lru_cache
from typing import Optional

import jsonschema
from fastapi import FastAPI, Request, Response
from fastapi.middleware.cors import CORSMiddleware

from .adjusters import (
    DeadlinePressure,
    HistoryAmbiguous,
    feasibility_value,
    framing_value,
    reference_value,
)
from .documents import (
    parse_assessment,
    parse_weights,
    scenario_schema,
    to_canonical_json,
    validate_scenario,
)
from .engine import CurrencyMismatch, EmptyScenario, evaluate
from .model import (
    Application,
    BackupPolicy,
    DEFAULT_ADJUSTER_POLICY,
    HandledOutcome,
    HistoryEntry,
    IncidentHistory,
    ModelError,
    Violation,
)
from .rational import format_rational, parse_rational
from .store import IncidentStore, NotFound, StorageUnavailable, VersionConflict
from .whatif import ClockSkew, InfeasibleSweep, countdown, parse_sweep_request, sweep


def _json_response(doc, status_code: int = 200) -> Response:
    return Response(
        content=to_canonical_json(doc),
        status_code=status_code,
        media_type="application/json",
    )


def _error(status_code: int, code: str, message: str, violations=()) -> Response:
    return _json_response(
        {
            "code": code,
            "message": message,
            "violations": [v.as_dict() for v in violations],
        },
        status_code=status_code,
    )


@lru_cache(maxsize=None)
def _sub_validator(def_name: str) -> jsonschema.Draft202012Validator:
    schema = {"$ref": f"#/$defs/{def_name}", "$defs": scenario_schema()["$defs"]}
    return jsonschema.Draft202012Validator(schema)


def _structural(def_name: str, doc, path: str) -> list[Violation]:
    return [
        Violation("SchemaError", path, e.message)
        for e in _sub_validator(def_name).iter_errors(doc)
    ]


async def _body_json(request: Request):
    raw = await request.body()
    if not raw:
        return {}
    return json.loads(raw.decode("utf-8"))


def _actor(request: Request) -> str:
    return request.headers.get("X-Actor", "anonymous")


def create_app(store: IncidentStore) -> FastAPI:
    app = FastAPI(title="rads", docs_url=None, redoc_url=None)
    origins = os.environ.get("RADS_CORS_ORIGINS", "*").split(",")
    app.add_middleware(
        CORSMiddleware,
        allow_origins=origins,
        allow_methods=["*"],
        allow_headers=["*"],
    )

    @app.exception_handler(json.JSONDecodeError)
    async def _bad_json(request, exc):
        return _error(400, "ParseError", f"request body is not valid JSON: {exc}")

    @app.exception_handler(UnicodeDecodeError)
    async def _bad_utf8(request, exc):
        return _error(400, "ParseError", "request body is not valid UTF-8")

    @app.exception_handler(NotFound)
    async def _not_found(request, exc):
        return _error(404, "NotFound", str(exc))

    @app.exception_handler(VersionConflict)
    async def _conflict(request, exc):
        return _error(409, "VersionConflict", str(exc))

    @app.exception_handler(InfeasibleSweep)
    async def _infeasible(request, exc):
        return _error(422, "InfeasibleSweep", str(exc))

    @app.exception_handler(HistoryAmbiguous)
    async def _ambiguous(request, exc):
        return _error(422, "HistoryAmbiguous", str(exc))

    @app.exception_handler(ClockSkew)
    async def _skew(request, exc):
        return _error(400, "ClockSkew", str(exc))

    @app.exception_handler(CurrencyMismatch)
    async def _currency(request, exc):
        return _error(400, "CurrencyMismatch", str(exc))

    @app.exception_handler(EmptyScenario)
    async def _empty(request, exc):
        return _error(400, "EmptyScenario", str(exc))

    @app.exception_handler(ModelError)
    async def _model_error(request, exc):
        return _error(400, exc.code, exc.message)

    @app.exception_handler(StorageUnavailable)
    async def _storage(request, exc):
        return _error(503, "StorageUnavailable", str(exc))

    @app.post("/api/incidents")
    async def create_incident(request: Request):
        doc = await _body_json(request)
        result = validate_scenario(doc)
        if not result.ok:
            return _error(400, "ValidationFailed", "scenario document is invalid", result.violations)
        scenario = result.scenario
        if store.exists(scenario.id):
            raise VersionConflict(f"incident {scenario.id!r} already exists")
        detected_at = None
        raw_detected = request.query_params.get("detected_at")
        if raw_detected:
            try:
                detected_at = datetime.fromisoformat(raw_detected)
            except ValueError:
                return _error(400, "RangeError", f"detected_at is not an ISO timestamp: {raw_detected!r}")
        version = store.save_scenario(
            scenario, base_version=0, actor=_actor(request), detected_at=detected_at
        )
        return _json_response({"id": scenario.id, "version": version}, status_code=201)

    @app.get("/api/incidents")
    async def list_incidents(status: Optional[str] = None):
        return _json_response([s.as_dict() for s in store.list_incidents(status)])

    @app.get("/api/incidents/{incident_id}")
    async def get_incident(incident_id: str, version: Optional[int] = None):
        raw = store.load_scenario_bytes(incident_id, version)
        return Response(content=raw, media_type="application/json")

    @app.get("/api/incidents/{incident_id}/audit")
    async def get_audit(incident_id: str):
        store._incident_dir(incident_id)  # 404 on unknown id
        return _json_response([e.as_dict() for e in store.read_audit(incident_id)])

    def _base_version(doc) -> int:
        base = doc.get("base_version")
        if not isinstance(base, int) or isinstance(base, bool) or base < 1:
            raise ModelError("SchemaError", "base_version must be a positive integer")
        return base

    @app.put("/api/incidents/{incident_id}/weights")
    async def put_weights(incident_id: str, request: Request):
        doc = await _body_json(request)
        base = _base_version(doc)
        violations = _structural("weights", doc.get("weights"), "/weights")
        if not violations:
            weights, violations = parse_weights(doc["weights"])
        if violations:
            return _error(400, "ValidationFailed", "weights are invalid", violations)
        current = store.current_version(incident_id)
        if base != current:
            raise VersionConflict(f"base version {base} is stale; current is {current}")
        scenario = store.load_scenario(incident_id, current)
        version = store.save_scenario(
            replace(scenario, weights=weights),
            base_version=base,
            actor=_actor(request),
            summary=f"weights updated (v{base + 1})",
        )
        return _json_response({"id": incident_id, "version": version})

    @app.put("/api/incidents/{incident_id}/applications/{app_id}/assessment")
    async def put_assessment(incident_id: str, app_id: str, request: Request):
        doc = await _body_json(request)
        base = _base_version(doc)
        violations = _structural("assessment", doc.get("assessment"), "/assessment")
        if not violations:
            assessment, violations = parse_assessment(doc["assessment"], "/assessment")
        if violations:
            return _error(400, "ValidationFailed", "assessment is invalid", violations)
        current = store.current_version(incident_id)
        if base != current:
            raise VersionConflict(f"base version {base} is stale; current is {current}")
        scenario = store.load_scenario(incident_id, current)
        ids = [app.id for app in scenario.applications]
        if app_id not in ids:
            raise NotFound(f"no application {app_id!r} in incident {incident_id!r}")
        apps = tuple(
            Application(
                id=app.id,
                name=app.name,
                criticality=app.criticality,
                affected=app.affected,
                assessment=assessment if app.id == app_id else app.assessment,
            )
            for app in scenario.applications
        )
        version = store.save_scenario(
            replace(scenario, applications=apps),
            base_version=base,
            actor=_actor(request),
            summary=f"assessment updated for {app_id} (v{base + 1})",
        )
        return _json_response({"id": incident_id, "version": version})

    @app.get("/api/incidents/{incident_id}/decision")
    async def get_decision(
        incident_id: str,
        request: Request,
        day: str = "0",
        version: Optional[int] = None,
    ):
        try:
            elapsed = parse_rational(day)
        except ValueError:
            return _error(400, "RangeError", f"day is not a rational: {day!r}")
        if elapsed < 0:
            return _error(400, "RangeError", "day must be >= 0")
        used_version = version if version is not None else store.current_version(incident_id)
        scenario = store.load_scenario(incident_id, used_version)
        report = evaluate(scenario, elapsed)
        store.save_report(incident_id, used_version, report, actor=_actor(request))
        raw = store.load_report_bytes(incident_id, used_version, elapsed)
        return Response(content=raw, media_type="application/json")

    @app.post("/api/incidents/{incident_id}/sweep")
    async def post_sweep(incident_id: str, request: Request):
        doc = await _body_json(request)
        scenario = store.load_scenario(incident_id)
        sweep_request, violations = parse_sweep_request(doc, scenario)
        if violations:
            return _error(400, "ValidationFailed", "sweep request is invalid", violations)
        result = sweep(scenario, sweep_request)
        return _json_response(result.as_dict())

    @app.get("/api/incidents/{incident_id}/countdown")
    async def get_countdown(incident_id: str):
        scenario = store.load_scenario(incident_id)
        record = store.get_record(incident_id)
        attack_time = datetime.fromisoformat(record.detected_at)
        state = countdown(scenario.ransom, datetime.now(timezone.utc), attack_time)
        return _json_response(state.as_dict())

    @app.post("/api/incidents/{incident_id}/derive/{kind}")
    async def derive(incident_id: str, kind: str, request: Request):
        if kind not in ("framing", "reference", "feasibility"):
            raise NotFound(f"no derivation named {kind!r}")
        doc = await _body_json(request)
        scenario = store.load_scenario(incident_id)
        policy = scenario.adjuster_policy or DEFAULT_ADJUSTER_POLICY

        try:
            if kind == "framing":
                if "deadline_days" in doc:
                    deadline = (
                        None if doc["deadline_days"] is None
                        else parse_rational(doc["deadline_days"])
                    )
                else:
                    deadline = Fraction(scenario.ransom.deadline_days)
                recovery = (
                    parse_rational(doc["estimated_recovery_days"])
                    if "estimated_recovery_days" in doc
                    else scenario.estimated_recovery_days
                )
                value = framing_value(DeadlinePressure(deadline, recovery), policy)
            elif kind == "reference":
                history = scenario.history
                if "history" in doc:
                    if not isinstance(doc["history"], list):
                        raise ValueError("history must be an array of entries")
                    history = IncidentHistory(
                        tuple(
                            HistoryEntry(
                                date=datetime.fromisoformat(d["date"]).date(),
                                summary=d.get("summary", ""),
                                handled=HandledOutcome(d["handled"]),
                            )
                            for d in doc["history"]
                        )
                    )
                value = reference_value(history)
            else:
                if "coverage_fraction" in doc or "last_backup_age_days" in doc:
                    backups = BackupPolicy(
                        last_backup_age_days=doc.get("last_backup_age_days", 0),
                        coverage_fraction=parse_rational(doc.get("coverage_fraction", "0")),
                    )
                elif scenario.backups is not None:
                    backups = scenario.backups
                else:
                    return _error(
                        400, "ValidationFailed",
                        "scenario has no backup facts; supply coverage_fraction and last_backup_age_days",
                    )
                cadence = doc.get("backup_cadence_days", 7)
                value = feasibility_value(backups, cadence, policy)
        except (ValueError, TypeError, KeyError) as err:
            return _error(400, "ValidationFailed", f"invalid facts: {err}")
        return _json_response({"value": format_rational(value)})

    return app


def serve(store_path: str, host: str = "127.0.0.1", port: int = 8000) -> None:
    """Run the service until interrupted."""
    import uvicorn

    uvicorn.run(create_app(IncidentStore(store_path)), host=host, port=port)
