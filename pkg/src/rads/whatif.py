"""Attacker countdown modeling and what-if sweeps.

The demand doubles at every period boundary until the hard deadline;
after the deadline the offer is expired and the amount freezes at the
last scheduled step. Sweeps re-evaluate a scenario across a grid of
values for one quantity (threshold, a weight, one factor of one
application, or elapsed days) holding everything else fixed, so
responders can see exactly where decisions flip.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, replace
from datetime import datetime
from fractions import Fraction
from typing import Optional

from .documents import report_to_dict
from .engine import evaluate
from .model import (
    FACTOR_FIELDS,
    Application,
    DecisionReport,
    IncidentScenario,
    ModelError,
    RadsError,
    RansomDemand,
    Violation,
    check_factor_value,
)
from .rational import format_rational, parse_rational


class InfeasibleSweep(RadsError):
    """Requested weight substitution cannot keep the profile summing to 100."""


class ClockSkew(RadsError):
    """Current time precedes the attack time."""


def _doublings_before(demand: RansomDemand, elapsed: Fraction) -> int:
    return int(elapsed // demand.doubling_period_days)


def ransom_at(demand: RansomDemand, elapsed_days: Fraction | int) -> int:
    """Demanded amount after elapsed_days, in minor currency units.

    Doubles every period; past the deadline the amount freezes at the
    last step that was actually scheduled before expiry.
    """
    elapsed = Fraction(elapsed_days)
    if elapsed < 0:
        raise ValueError("elapsed_days must be >= 0")
    if elapsed >= demand.deadline_days:
        doublings = -(-demand.deadline_days // demand.doubling_period_days) - 1
    else:
        doublings = _doublings_before(demand, elapsed)
    return demand.base_amount * 2**doublings


def offer_expired(demand: RansomDemand, elapsed_days: Fraction | int) -> bool:
    return Fraction(elapsed_days) >= demand.deadline_days


@dataclass(frozen=True)
class CountdownState:
    """Clock arithmetic over the doubling schedule, for the console header."""

    elapsed_days: Fraction
    current_amount: int
    days_to_next_doubling: Optional[Fraction]
    next_amount: Optional[int]
    expired: bool

    def as_dict(self) -> dict:
        return {
            "elapsed_days": format_rational(self.elapsed_days),
            "current_amount": self.current_amount,
            "days_to_next_doubling": (
                None
                if self.days_to_next_doubling is None
                else format_rational(self.days_to_next_doubling)
            ),
            "next_amount": self.next_amount,
            "expired": self.expired,
        }


def _exact_days(delta) -> Fraction:
    micros = (delta.days * 86400 + delta.seconds) * 10**6 + delta.microseconds
    return Fraction(micros, 86400 * 10**6)


def countdown(
    demand: RansomDemand, now: datetime, attack_time: datetime
) -> CountdownState:
    if now < attack_time:
        raise ClockSkew(f"now ({now}) precedes attack time ({attack_time})")
    elapsed = _exact_days(now - attack_time)
    expired = offer_expired(demand, elapsed)
    current = ransom_at(demand, elapsed)
    next_boundary = (_doublings_before(demand, elapsed) + 1) * demand.doubling_period_days
    if expired or next_boundary >= demand.deadline_days:
        return CountdownState(elapsed, current, None, None, expired)
    return CountdownState(
        elapsed_days=elapsed,
        current_amount=current,
        days_to_next_doubling=next_boundary - elapsed,
        next_amount=ransom_at(demand, Fraction(next_boundary)),
        expired=False,
    )


# --- sweeps ------------------------------------------------------------------

QUANTITY_KINDS = ("threshold", "elapsed_days", "weight", "factor")


@dataclass(frozen=True)
class SweptQuantity:
    """What a sweep varies: "threshold", "elapsed_days", "weight:<name>"
    or "factor:<app_id>:<name>"."""

    kind: str
    weight_name: Optional[str] = None
    app_id: Optional[str] = None
    factor_name: Optional[str] = None

    def __post_init__(self):
        if self.kind not in QUANTITY_KINDS:
            raise ValueError(f"unknown sweep quantity kind {self.kind!r}")
        if self.kind == "weight" and self.weight_name not in FACTOR_FIELDS:
            raise ValueError(f"unknown weight {self.weight_name!r}")
        if self.kind == "factor":
            if self.factor_name not in FACTOR_FIELDS:
                raise ValueError(f"unknown factor {self.factor_name!r}")
            if not self.app_id:
                raise ValueError("factor sweep needs an application id")

    @classmethod
    def parse(cls, text: str) -> "SweptQuantity":
        parts = text.split(":")
        if parts[0] in ("threshold", "elapsed_days") and len(parts) == 1:
            return cls(kind=parts[0])
        if parts[0] == "weight" and len(parts) == 2:
            return cls(kind="weight", weight_name=parts[1])
        if parts[0] == "factor" and len(parts) == 3:
            return cls(kind="factor", app_id=parts[1], factor_name=parts[2])
        raise ValueError(f"cannot parse sweep quantity {text!r}")

    def __str__(self) -> str:
        if self.kind == "weight":
            return f"weight:{self.weight_name}"
        if self.kind == "factor":
            return f"factor:{self.app_id}:{self.factor_name}"
        return self.kind


@dataclass(frozen=True)
class SweepRequest:
    quantity: SweptQuantity
    grid: tuple[Fraction, ...]
    constraint_mode: str = "proportional"
    elapsed_days: Fraction = Fraction(0)

    def __post_init__(self):
        if not self.grid:
            raise ValueError("sweep grid must be non-empty")
        if any(b <= a for a, b in zip(self.grid, self.grid[1:])):
            raise ValueError("sweep grid must be strictly increasing")
        if self.constraint_mode != "proportional":
            raise ValueError(f"unknown constraint mode {self.constraint_mode!r}")
        if self.elapsed_days < 0:
            raise ValueError("elapsed_days must be >= 0")
        for point in self.grid:
            self._check_point(point)

    def _check_point(self, point: Fraction) -> None:
        kind = self.quantity.kind
        if kind == "threshold" and not 0 < point <= 100:
            raise ValueError(f"threshold sample {point} outside (0, 100]")
        if kind == "weight" and not 0 <= point <= 100:
            raise ValueError(f"weight sample {point} outside [0, 100]")
        if kind == "factor":
            check_factor_value(point, str(self.quantity))
        if kind == "elapsed_days" and point < 0:
            raise ValueError("elapsed_days samples must be >= 0")


@dataclass(frozen=True)
class SweepPoint:
    sample: Fraction
    report: DecisionReport

    @property
    def pay_count(self) -> int:
        return self.report.pay_count


@dataclass(frozen=True)
class SweepResult:
    request: SweepRequest
    points: tuple[SweepPoint, ...]

    def as_dict(self) -> dict:
        return {
            "quantity": str(self.request.quantity),
            "constraint_mode": self.request.constraint_mode,
            "elapsed_days": format_rational(self.request.elapsed_days),
            "points": [
                {
                    "sample": format_rational(p.sample),
                    "report": report_to_dict(p.report),
                }
                for p in self.points
            ],
        }


def parse_sweep_request(
    doc: dict, scenario: IncidentScenario
) -> tuple[Optional[SweepRequest], list[Violation]]:
    """Build a SweepRequest from a wire document; total, collects violations."""

    def fail(code: str, path: str, message: str):
        return None, [Violation(code, path, message)]

    if not isinstance(doc, dict):
        return fail("SchemaError", "", "sweep request must be an object")
    try:
        quantity = SweptQuantity.parse(doc.get("quantity", ""))
    except (ValueError, AttributeError, TypeError) as err:
        return fail("SchemaError", "/quantity", str(err))
    if quantity.kind == "factor":
        try:
            app = scenario.application(quantity.app_id)
        except KeyError:
            return fail("NotFound", "/quantity", f"unknown application {quantity.app_id!r}")
        if app.assessment is None:
            return fail(
                "MissingAssessment", "/quantity",
                f"application {quantity.app_id!r} has no assessment to sweep",
            )
    raw_grid = doc.get("grid")
    if not isinstance(raw_grid, list) or not raw_grid:
        return fail("SchemaError", "/grid", "grid must be a non-empty array of rationals")
    grid = []
    for i, raw in enumerate(raw_grid):
        try:
            grid.append(parse_rational(raw))
        except ValueError as err:
            return fail("SchemaError", f"/grid/{i}", str(err))
    try:
        elapsed = parse_rational(doc.get("elapsed_days", "0"))
        request = SweepRequest(
            quantity=quantity,
            grid=tuple(grid),
            constraint_mode=doc.get("constraint_mode", "proportional"),
            elapsed_days=elapsed,
        )
    except (ValueError, ModelError) as err:
        return fail("RangeError", "/grid", str(err))
    return request, []


def _with_weight(scenario: IncidentScenario, name: str, value: Fraction) -> IncidentScenario:
    old = getattr(scenario.weights, name)
    rest = 100 - old
    if rest == 0:
        if value == old:
            return scenario
        raise InfeasibleSweep(
            f"weight {name} holds the full 100 points; the other weights "
            "are all 0 and cannot absorb a change"
        )
    factor = (100 - value) / rest
    changes = {
        other: getattr(scenario.weights, other) * factor
        for other in FACTOR_FIELDS
        if other != name
    }
    changes[name] = value
    return replace(scenario, weights=scenario.weights.replace(**changes))


def _with_factor(
    scenario: IncidentScenario, app_id: str, name: str, value: Fraction
) -> IncidentScenario:
    apps = []
    for app in scenario.applications:
        if app.id == app_id:
            app = Application(
                id=app.id,
                name=app.name,
                criticality=app.criticality,
                affected=app.affected,
                assessment=app.assessment.replace(**{name: value}),
            )
        apps.append(app)
    return replace(scenario, applications=tuple(apps))


def sweep(scenario: IncidentScenario, request: SweepRequest) -> SweepResult:
    """Evaluate the scenario at every grid point, everything else fixed.

    Points are independent; results come back in grid order."""
    points = []
    for sample in request.grid:
        if request.quantity.kind == "threshold":
            modified, elapsed = replace(scenario, threshold=sample), request.elapsed_days
        elif request.quantity.kind == "elapsed_days":
            modified, elapsed = scenario, sample
        elif request.quantity.kind == "weight":
            modified = _with_weight(scenario, request.quantity.weight_name, sample)
            elapsed = request.elapsed_days
        else:
            modified = _with_factor(
                scenario, request.quantity.app_id, request.quantity.factor_name, sample
            )
            elapsed = request.elapsed_days
        points.append(SweepPoint(sample=sample, report=evaluate(modified, elapsed)))
    return SweepResult(request=request, points=tuple(points))


def sweep_csv(result: SweepResult) -> str:
    """Flatten a sweep for offline charting: one row per grid point."""
    app_ids = [row.app_id for row in result.points[0].report.rows]
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    header = ["sample"]
    for app_id in app_ids:
        header += [f"af_{app_id}", f"decision_{app_id}"]
    header.append("ransom_now")
    writer.writerow(header)
    for point in result.points:
        row = [format_rational(point.sample)]
        for report_row in point.report.rows:
            row += [format_rational(report_row.adjusted_factor), report_row.decision.value]
        row.append(str(point.report.ransom_now.amount))
        writer.writerow(row)
    return out.getvalue()
