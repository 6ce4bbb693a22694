"""Domain model for ransomware incident scenarios.

Validated value types shared by the scoring engine, the what-if
machinery, the store, and the service. Everything is immutable after
construction; constructors raise ModelError on invariant violations
(the document parser in `documents` collects these into violation
lists instead of crashing).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from datetime import date
from enum import Enum
from fractions import Fraction
from types import MappingProxyType
from typing import Mapping, Optional, Sequence

from .rational import is_four_decimal

FACTOR_FIELDS = (
    "impact",
    "feasibility",
    "effort_time",
    "effort_cost",
    "framing",
    "reference",
)

WEIGHT_SUM = Fraction(100)


class RadsError(Exception):
    """Base class for all errors raised by this package."""


class ModelError(RadsError):
    """An invariant violation detected while constructing a value type."""

    def __init__(self, code: str, message: str):
        super().__init__(message)
        self.code = code
        self.message = message


@dataclass(frozen=True)
class Violation:
    """One structured validation failure (code + document path + text)."""

    code: str
    path: str
    message: str

    def as_dict(self) -> dict:
        return {"code": self.code, "path": self.path, "message": self.message}


class CriticalityClass(Enum):
    CRITICAL = "Critical"
    HIGH = "High"
    MEDIUM = "Medium"
    LOW = "Low"


class Decision(Enum):
    PAY = "Pay"
    RESIST = "Resist"


class HandledOutcome(Enum):
    NOT_APPLICABLE = "NotApplicable"
    INSUFFICIENT = "Insufficient"
    SUFFICIENT = "Sufficient"


def check_factor_value(value: Fraction, name: str = "factor") -> Fraction:
    """A score in [0, 1], exact at four decimal places."""
    if not 0 <= value <= 1:
        raise ModelError("RangeError", f"{name} must be within [0, 1], got {value}")
    if not is_four_decimal(value):
        raise ModelError(
            "RangeError", f"{name} must be representable as k/10000, got {value}"
        )
    return value


@dataclass(frozen=True)
class WeightProfile:
    """The six organisation-chosen weight points; they must sum to 100."""

    impact: Fraction
    feasibility: Fraction
    effort_time: Fraction
    effort_cost: Fraction
    framing: Fraction
    reference: Fraction

    def __post_init__(self):
        for name in FACTOR_FIELDS:
            if getattr(self, name) < 0:
                raise ModelError("RangeError", f"weight {name} must be >= 0")
        total = self.total()
        if total != WEIGHT_SUM:
            raise ModelError(
                "WeightSumError", f"weights sum to {total}, expected 100"
            )

    def total(self) -> Fraction:
        return sum(getattr(self, name) for name in FACTOR_FIELDS)

    def replace(self, **changes: Fraction) -> "WeightProfile":
        values = {name: getattr(self, name) for name in FACTOR_FIELDS}
        values.update(changes)
        return WeightProfile(**values)


@dataclass(frozen=True)
class FactorAssessment:
    """The six scored values for one application, plus unscored notes.

    Legality, assurance, certainty and criminal-funding concerns are
    recorded as free-text advisory notes only; they never enter the
    decision factor.
    """

    impact: Fraction
    feasibility: Fraction
    effort_time: Fraction
    effort_cost: Fraction
    framing: Fraction
    reference: Fraction
    advisory_notes: Mapping[str, str] = field(default_factory=dict)

    def __post_init__(self):
        for name in FACTOR_FIELDS:
            check_factor_value(getattr(self, name), name)
        object.__setattr__(
            self, "advisory_notes", MappingProxyType(dict(self.advisory_notes))
        )

    def replace(self, **changes: Fraction) -> "FactorAssessment":
        values = {name: getattr(self, name) for name in FACTOR_FIELDS}
        values.update(changes)
        return FactorAssessment(advisory_notes=dict(self.advisory_notes), **values)


@dataclass(frozen=True)
class CriticalityScale:
    """Numeric cap per criticality class, strictly decreasing."""

    critical: Fraction
    high: Fraction
    medium: Fraction
    low: Fraction

    def __post_init__(self):
        if not self.critical > self.high > self.medium > self.low > 0:
            raise ModelError(
                "ScaleOrderError",
                "criticality caps must satisfy Critical > High > Medium > Low > 0",
            )

    def cap(self, criticality: CriticalityClass) -> Fraction:
        return {
            CriticalityClass.CRITICAL: self.critical,
            CriticalityClass.HIGH: self.high,
            CriticalityClass.MEDIUM: self.medium,
            CriticalityClass.LOW: self.low,
        }[criticality]


# Critical and Low anchored by the worked financing-company example;
# High and Medium interpolated. Per-scenario configurable.
DEFAULT_SCALE = CriticalityScale(
    critical=Fraction(5),
    high=Fraction(3),
    medium=Fraction(5, 2),
    low=Fraction(2),
)


@dataclass(frozen=True)
class Application:
    id: str
    name: str
    criticality: CriticalityClass
    affected: bool
    assessment: Optional[FactorAssessment] = None

    def __post_init__(self):
        if not self.id:
            raise ModelError("SchemaError", "application id must be non-empty")
        if self.affected and self.assessment is None:
            raise ModelError(
                "MissingAssessment",
                f"affected application {self.id!r} has no assessment",
            )


@dataclass(frozen=True)
class Money:
    """An amount in integer minor units of one ISO-4217 currency."""

    amount: int
    currency: str

    def __post_init__(self):
        if not isinstance(self.amount, int) or isinstance(self.amount, bool):
            raise ModelError("InvalidAmount", "amount must be an integer (minor units)")
        if not self.currency:
            raise ModelError("SchemaError", "currency code must be non-empty")


@dataclass(frozen=True)
class RansomDemand:
    """The attacker's offer: base amount, doubling cadence, hard deadline."""

    base_amount: int
    doubling_period_days: int
    deadline_days: int
    currency_code: str

    def __post_init__(self):
        if self.base_amount <= 0:
            raise ModelError("InvalidAmount", "ransom base_amount must be > 0")
        if self.doubling_period_days < 1:
            raise ModelError("InvalidAmount", "doubling_period_days must be >= 1")
        if self.deadline_days < self.doubling_period_days:
            raise ModelError(
                "InvalidAmount", "deadline_days must be >= doubling_period_days"
            )


@dataclass(frozen=True)
class HistoryEntry:
    date: date
    summary: str
    handled: HandledOutcome


@dataclass(frozen=True)
class IncidentHistory:
    """Prior incidents, oldest first."""

    entries: Sequence[HistoryEntry] = ()

    def __post_init__(self):
        entries = tuple(self.entries)
        for earlier, later in zip(entries, entries[1:]):
            if later.date < earlier.date:
                raise ModelError(
                    "HistoryOrderError", "history entries must be ordered by date"
                )
        object.__setattr__(self, "entries", entries)

    def __len__(self) -> int:
        return len(self.entries)

    def latest(self) -> Optional[HistoryEntry]:
        return self.entries[-1] if self.entries else None


@dataclass(frozen=True)
class BackupPolicy:
    last_backup_age_days: int
    coverage_fraction: Fraction

    def __post_init__(self):
        if self.last_backup_age_days < 0:
            raise ModelError("RangeError", "last_backup_age_days must be >= 0")
        if not 0 <= self.coverage_fraction <= 1:
            raise ModelError(
                "RangeError", "coverage_fraction must be within [0, 1]"
            )


@dataclass(frozen=True)
class IncidentScenario:
    """Everything known about one attack, validated and immutable."""

    id: str
    organisation: str
    applications: Sequence[Application]
    weights: WeightProfile
    scale: CriticalityScale
    ransom: RansomDemand
    value_breached: Money
    estimated_recovery_days: Fraction
    estimated_recovery_cost: Money
    history: IncidentHistory = IncidentHistory()
    backups: Optional[BackupPolicy] = None
    threshold: Fraction = Fraction(65)
    exempt_medium: bool = True
    adjuster_policy: Optional["AdjusterPolicy"] = None

    def __post_init__(self):
        object.__setattr__(self, "applications", tuple(self.applications))
        if not self.id:
            raise ModelError("SchemaError", "scenario id must be non-empty")
        seen: set[str] = set()
        for app in self.applications:
            if app.id in seen:
                raise ModelError("DuplicateId", f"duplicate application id {app.id!r}")
            seen.add(app.id)
        if not any(app.affected for app in self.applications):
            raise ModelError(
                "EmptyScenario", "scenario must contain at least one affected application"
            )
        if not 0 < self.threshold <= 100:
            raise ModelError("RangeError", "threshold must be within (0, 100]")
        if self.estimated_recovery_days <= 0:
            raise ModelError("RangeError", "estimated_recovery_days must be > 0")

    def affected_applications(self) -> tuple[Application, ...]:
        return tuple(app for app in self.applications if app.affected)

    def application(self, app_id: str) -> Application:
        for app in self.applications:
            if app.id == app_id:
                return app
        raise KeyError(app_id)


@dataclass(frozen=True)
class AdjusterPolicy:
    """Tunable cutoffs for the derived bias-correction values."""

    framing_urgent_ratio: Fraction = Fraction(1, 2)
    feasibility_full_coverage: Fraction = Fraction(7, 8)

    def __post_init__(self):
        if not 0 < self.framing_urgent_ratio <= 1:
            raise ModelError(
                "RangeError", "framing_urgent_ratio must be within (0, 1]"
            )
        if not 0 < self.feasibility_full_coverage <= 1:
            raise ModelError(
                "RangeError", "feasibility_full_coverage must be within (0, 1]"
            )


DEFAULT_ADJUSTER_POLICY = AdjusterPolicy()


@dataclass(frozen=True)
class CostComparison:
    """Advisory ransom-vs-cost ratios; never alters a decision."""

    ransom_to_breached: Fraction
    ransom_to_recovery: Fraction
    flags: tuple[str, ...]


@dataclass(frozen=True)
class ReportRow:
    app_id: str
    name: str
    criticality: CriticalityClass
    cap: Fraction
    decision_factor: Fraction
    adjusted_factor: Fraction
    decision: Decision


@dataclass(frozen=True)
class DecisionReport:
    """Per-application outcome plus the scenario-level statistics."""

    scenario_id: str
    elapsed_days: Fraction
    threshold: Fraction
    rows: tuple[ReportRow, ...]
    mean_criticality: Fraction
    weight_criticality: Fraction
    ransom_now: Money
    costs: CostComparison

    @property
    def pay_count(self) -> int:
        return sum(1 for row in self.rows if row.decision is Decision.PAY)
