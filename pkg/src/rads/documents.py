"""Scenario and report documents: parsing, validation, canonical JSON.

The scenario wire format is UTF-8 JSON (see ``schema/scenario.schema.json``):
rationals are exact strings, currency amounts are integer minor units.
Validation is total — any byte input yields either a scenario or a list
of structured violations, never an exception. Serialization is canonical
(fixed key order, compact separators) so identical values always produce
identical bytes.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from datetime import date
from fractions import Fraction
from functools import lru_cache
from importlib import resources
from typing import Any, Optional

import jsonschema

from .model import (
    FACTOR_FIELDS,
    AdjusterPolicy,
    Application,
    BackupPolicy,
    CriticalityClass,
    CriticalityScale,
    DecisionReport,
    DEFAULT_SCALE,
    FactorAssessment,
    HandledOutcome,
    HistoryEntry,
    IncidentHistory,
    IncidentScenario,
    ModelError,
    Money,
    RansomDemand,
    Violation,
    WeightProfile,
    check_factor_value,
)
from .rational import format_rational, parse_rational


@lru_cache(maxsize=1)
def scenario_schema() -> dict:
    """The packaged JSON schema for scenario documents."""
    raw = resources.files("rads.schema").joinpath("scenario.schema.json").read_text()
    return json.loads(raw)


@lru_cache(maxsize=1)
def _schema_validator() -> jsonschema.Draft202012Validator:
    return jsonschema.Draft202012Validator(scenario_schema())


@dataclass
class ValidationResult:
    scenario: Optional[IncidentScenario] = None
    violations: list[Violation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.scenario is not None and not self.violations


def _pointer(parts) -> str:
    return "/" + "/".join(str(p) for p in parts) if parts else ""


def _structural_violations(doc: Any) -> list[Violation]:
    errors = sorted(
        _schema_validator().iter_errors(doc), key=lambda e: list(e.absolute_path)
    )
    return [
        Violation("SchemaError", _pointer(e.absolute_path), e.message) for e in errors
    ]


def parse_weights(doc: dict, path: str = "/weights") -> tuple[Optional[WeightProfile], list[Violation]]:
    """Semantic checks over a structurally valid weights object."""
    violations: list[Violation] = []
    values: dict[str, Fraction] = {}
    for name in FACTOR_FIELDS:
        value = parse_rational(doc[name])
        if value < 0:
            violations.append(
                Violation("RangeError", f"{path}/{name}", f"weight {name} must be >= 0")
            )
        values[name] = value
    total = sum(values.values())
    if total != 100:
        violations.append(
            Violation("WeightSumError", path, f"weights sum to {format_rational(total)}, expected 100")
        )
    if violations:
        return None, violations
    return WeightProfile(**values), []


def parse_assessment(doc: dict, path: str) -> tuple[Optional[FactorAssessment], list[Violation]]:
    violations: list[Violation] = []
    values: dict[str, Fraction] = {}
    for name in FACTOR_FIELDS:
        value = parse_rational(doc[name])
        try:
            check_factor_value(value, name)
        except ModelError as err:
            violations.append(Violation(err.code, f"{path}/{name}", err.message))
        values[name] = value
    if violations:
        return None, violations
    notes = doc.get("advisory_notes", {})
    return FactorAssessment(advisory_notes=notes, **values), []


def _parse_scale(doc: dict) -> tuple[Optional[CriticalityScale], list[Violation]]:
    try:
        scale = CriticalityScale(
            critical=parse_rational(doc["Critical"]),
            high=parse_rational(doc["High"]),
            medium=parse_rational(doc["Medium"]),
            low=parse_rational(doc["Low"]),
        )
        return scale, []
    except ModelError as err:
        return None, [Violation(err.code, "/scale", err.message)]


def _parse_applications(docs: list) -> tuple[list[Application], list[Violation]]:
    violations: list[Violation] = []
    apps: list[Application] = []
    seen: set[str] = set()
    for i, doc in enumerate(docs):
        path = f"/applications/{i}"
        app_errs: list[Violation] = []
        if doc["id"] in seen:
            app_errs.append(
                Violation("DuplicateId", f"{path}/id", f"duplicate application id {doc['id']!r}")
            )
        seen.add(doc["id"])
        assessment = None
        if "assessment" in doc:
            assessment, errs = parse_assessment(doc["assessment"], f"{path}/assessment")
            app_errs.extend(errs)
        affected = doc["affected"]
        if affected and "assessment" not in doc:
            app_errs.append(
                Violation(
                    "MissingAssessment",
                    path,
                    f"affected application {doc['id']!r} has no assessment",
                )
            )
        if app_errs:
            violations.extend(app_errs)
            continue
        apps.append(
            Application(
                id=doc["id"],
                name=doc["name"],
                criticality=CriticalityClass(doc["criticality"]),
                affected=affected,
                assessment=assessment,
            )
        )
    return apps, violations


def _parse_ransom(doc: dict) -> tuple[Optional[RansomDemand], list[Violation]]:
    try:
        demand = RansomDemand(
            base_amount=doc["base_amount"],
            doubling_period_days=doc["doubling_period_days"],
            deadline_days=doc["deadline_days"],
            currency_code=doc["currency_code"],
        )
        return demand, []
    except ModelError as err:
        return None, [Violation(err.code, "/ransom", err.message)]


def _parse_money(doc: dict, path: str) -> tuple[Optional[Money], list[Violation]]:
    if doc["amount"] <= 0:
        return None, [
            Violation("InvalidAmount", f"{path}/amount", "amount must be > 0")
        ]
    return Money(amount=doc["amount"], currency=doc["currency"]), []


def _parse_history(docs: list) -> tuple[Optional[IncidentHistory], list[Violation]]:
    entries = [
        HistoryEntry(
            date=date.fromisoformat(d["date"]),
            summary=d["summary"],
            handled=HandledOutcome(d["handled"]),
        )
        for d in docs
    ]
    try:
        return IncidentHistory(entries), []
    except ModelError as err:
        return None, [Violation(err.code, "/history", err.message)]


def _parse_backups(doc: dict) -> tuple[Optional[BackupPolicy], list[Violation]]:
    try:
        policy = BackupPolicy(
            last_backup_age_days=doc["last_backup_age_days"],
            coverage_fraction=parse_rational(doc["coverage_fraction"]),
        )
        return policy, []
    except ModelError as err:
        return None, [Violation(err.code, "/backups", err.message)]


def _parse_adjuster_policy(doc: dict) -> tuple[Optional[AdjusterPolicy], list[Violation]]:
    try:
        kwargs = {
            key: parse_rational(doc[key])
            for key in ("framing_urgent_ratio", "feasibility_full_coverage")
            if key in doc
        }
        return AdjusterPolicy(**kwargs), []
    except ModelError as err:
        return None, [Violation(err.code, "/adjuster_policy", err.message)]


def validate_scenario(doc: Any) -> ValidationResult:
    """Validate a parsed scenario document. Never raises."""
    structural = _structural_violations(doc)
    if structural:
        return ValidationResult(violations=structural)

    violations: list[Violation] = []

    apps, errs = _parse_applications(doc["applications"])
    violations.extend(errs)
    if not any(a["affected"] for a in doc["applications"]):
        violations.append(
            Violation(
                "EmptyScenario",
                "/applications",
                "scenario must contain at least one affected application",
            )
        )

    weights, errs = parse_weights(doc["weights"])
    violations.extend(errs)

    scale = DEFAULT_SCALE
    if "scale" in doc:
        scale, errs = _parse_scale(doc["scale"])
        violations.extend(errs)

    ransom, errs = _parse_ransom(doc["ransom"])
    violations.extend(errs)

    value_breached, errs = _parse_money(doc["value_breached"], "/value_breached")
    violations.extend(errs)
    recovery_cost, errs = _parse_money(doc["estimated_recovery_cost"], "/estimated_recovery_cost")
    violations.extend(errs)

    recovery_days = parse_rational(doc["estimated_recovery_days"])
    if recovery_days <= 0:
        violations.append(
            Violation("RangeError", "/estimated_recovery_days", "estimated_recovery_days must be > 0")
        )

    history = IncidentHistory()
    if "history" in doc:
        history, errs = _parse_history(doc["history"])
        violations.extend(errs)

    backups = None
    if "backups" in doc:
        backups, errs = _parse_backups(doc["backups"])
        violations.extend(errs)

    threshold = Fraction(65)
    if "threshold" in doc:
        threshold = parse_rational(doc["threshold"])
        if not 0 < threshold <= 100:
            violations.append(
                Violation("RangeError", "/threshold", "threshold must be within (0, 100]")
            )

    adjuster_policy = None
    if "adjuster_policy" in doc:
        adjuster_policy, errs = _parse_adjuster_policy(doc["adjuster_policy"])
        violations.extend(errs)

    if violations:
        return ValidationResult(violations=violations)

    try:
        scenario = IncidentScenario(
            id=doc["id"],
            organisation=doc["organisation"],
            applications=apps,
            weights=weights,
            scale=scale,
            ransom=ransom,
            value_breached=value_breached,
            estimated_recovery_days=recovery_days,
            estimated_recovery_cost=recovery_cost,
            history=history,
            backups=backups,
            threshold=threshold,
            exempt_medium=doc.get("exempt_medium", True),
            adjuster_policy=adjuster_policy,
        )
    except ModelError as err:
        return ValidationResult(violations=[Violation(err.code, "", err.message)])
    return ValidationResult(scenario=scenario)


def validate_scenario_bytes(raw: bytes) -> ValidationResult:
    """Decode, parse and validate raw bytes. Never raises."""
    try:
        doc = json.loads(raw.decode("utf-8"))
    except (UnicodeDecodeError, json.JSONDecodeError) as err:
        return ValidationResult(
            violations=[Violation("ParseError", "", f"not valid UTF-8 JSON: {err}")]
        )
    return validate_scenario(doc)


# --- serialization -----------------------------------------------------------


def _money_to_dict(money: Money) -> dict:
    return {"amount": money.amount, "currency": money.currency}


def assessment_to_dict(assessment: FactorAssessment) -> dict:
    doc = {name: format_rational(getattr(assessment, name)) for name in FACTOR_FIELDS}
    if assessment.advisory_notes:
        doc["advisory_notes"] = dict(sorted(assessment.advisory_notes.items()))
    return doc


def weights_to_dict(weights: WeightProfile) -> dict:
    return {name: format_rational(getattr(weights, name)) for name in FACTOR_FIELDS}


def scenario_to_dict(scenario: IncidentScenario) -> dict:
    doc: dict[str, Any] = {
        "id": scenario.id,
        "organisation": scenario.organisation,
        "applications": [],
        "weights": weights_to_dict(scenario.weights),
        "scale": {
            "Critical": format_rational(scenario.scale.critical),
            "High": format_rational(scenario.scale.high),
            "Medium": format_rational(scenario.scale.medium),
            "Low": format_rational(scenario.scale.low),
        },
        "ransom": {
            "base_amount": scenario.ransom.base_amount,
            "doubling_period_days": scenario.ransom.doubling_period_days,
            "deadline_days": scenario.ransom.deadline_days,
            "currency_code": scenario.ransom.currency_code,
        },
        "value_breached": _money_to_dict(scenario.value_breached),
        "estimated_recovery_days": format_rational(scenario.estimated_recovery_days),
        "estimated_recovery_cost": _money_to_dict(scenario.estimated_recovery_cost),
        "history": [
            {
                "date": entry.date.isoformat(),
                "summary": entry.summary,
                "handled": entry.handled.value,
            }
            for entry in scenario.history.entries
        ],
    }
    for app in scenario.applications:
        app_doc: dict[str, Any] = {
            "id": app.id,
            "name": app.name,
            "criticality": app.criticality.value,
            "affected": app.affected,
        }
        if app.assessment is not None:
            app_doc["assessment"] = assessment_to_dict(app.assessment)
        doc["applications"].append(app_doc)
    if scenario.backups is not None:
        doc["backups"] = {
            "last_backup_age_days": scenario.backups.last_backup_age_days,
            "coverage_fraction": format_rational(scenario.backups.coverage_fraction),
        }
    doc["threshold"] = format_rational(scenario.threshold)
    doc["exempt_medium"] = scenario.exempt_medium
    if scenario.adjuster_policy is not None:
        doc["adjuster_policy"] = {
            "framing_urgent_ratio": format_rational(
                scenario.adjuster_policy.framing_urgent_ratio
            ),
            "feasibility_full_coverage": format_rational(
                scenario.adjuster_policy.feasibility_full_coverage
            ),
        }
    return doc


def report_to_dict(report: DecisionReport) -> dict:
    return {
        "scenario_id": report.scenario_id,
        "elapsed_days": format_rational(report.elapsed_days),
        "threshold": format_rational(report.threshold),
        "rows": [
            {
                "app_id": row.app_id,
                "name": row.name,
                "criticality": row.criticality.value,
                "cap": format_rational(row.cap),
                "decision_factor": format_rational(row.decision_factor),
                "adjusted_factor": format_rational(row.adjusted_factor),
                "decision": row.decision.value,
            }
            for row in report.rows
        ],
        "mean_criticality": format_rational(report.mean_criticality),
        "weight_criticality": format_rational(report.weight_criticality),
        "ransom_now": _money_to_dict(report.ransom_now),
        "costs": {
            "ransom_to_breached": format_rational(report.costs.ransom_to_breached),
            "ransom_to_recovery": format_rational(report.costs.ransom_to_recovery),
            "flags": list(report.costs.flags),
        },
    }


def to_canonical_json(doc: Any) -> bytes:
    """Compact, key-order-preserving JSON; identical input, identical bytes."""
    return json.dumps(doc, ensure_ascii=False, separators=(",", ":")).encode("utf-8")


def scenario_to_json(scenario: IncidentScenario) -> bytes:
    return to_canonical_json(scenario_to_dict(scenario))


def report_to_json(report: DecisionReport) -> bytes:
    return to_canonical_json(report_to_dict(report))


def violations_to_dict(violations: list[Violation]) -> list[dict]:
    return [v.as_dict() for v in violations]
