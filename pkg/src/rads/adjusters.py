"""Derive correction values from raw incident facts.

Attackers deliberately shift how a ransom decision is perceived: the
countdown manufactures time urgency, and threats of further damage move
the victim's reference point. These helpers turn the observable facts
(deadline vs. recovery estimate, how past incidents went, backup state)
into the corresponding factor values so the scoring engine can weigh
the manipulation explicitly instead of absorbing it.

All derivations are assistance, not authority: operators may override
any suggested value in the assessment itself.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .model import (
    AdjusterPolicy,
    BackupPolicy,
    DEFAULT_ADJUSTER_POLICY,
    HandledOutcome,
    IncidentHistory,
    ModelError,
    RadsError,
)

ZERO = Fraction(0)
HALF = Fraction(1, 2)
ONE = Fraction(1)

# feasibility grid rungs below "fully restorable"
_PARTIAL_GRID = (ZERO, Fraction(1, 4), HALF, Fraction(3, 4))


class HistoryAmbiguous(RadsError):
    """Latest incident is unclassified while older scored incidents exist."""


@dataclass(frozen=True)
class DeadlinePressure:
    """Time pressure: the attacker's deadline against the recovery estimate."""

    deadline_days: Optional[Fraction]
    estimated_recovery_days: Fraction

    def __post_init__(self):
        if self.estimated_recovery_days <= 0:
            raise ModelError("RangeError", "estimated_recovery_days must be > 0")
        if self.deadline_days is not None and self.deadline_days <= 0:
            raise ModelError("RangeError", "deadline_days must be > 0 when present")


def framing_value(
    pressure: DeadlinePressure, policy: AdjusterPolicy = DEFAULT_ADJUSTER_POLICY
) -> Fraction:
    """Urgency framing: 0 without a deadline, 1 when the deadline is far
    shorter than recovery would take, 0.5 otherwise."""
    if pressure.deadline_days is None:
        return ZERO
    ratio = pressure.deadline_days / pressure.estimated_recovery_days
    if ratio < policy.framing_urgent_ratio:
        return ONE
    return HALF


def reference_value(history: IncidentHistory) -> Fraction:
    """Reference point from past incidents: the most recent scored outcome
    decides. 0 with no usable history, 0.5 after an insufficiently handled
    incident, 1 after a sufficiently handled one."""
    latest = history.latest()
    if latest is None:
        return ZERO
    if latest.handled is HandledOutcome.NOT_APPLICABLE:
        if any(
            e.handled is not HandledOutcome.NOT_APPLICABLE for e in history.entries
        ):
            raise HistoryAmbiguous(
                "most recent incident is unclassified; classify it before deriving"
            )
        return ZERO
    if latest.handled is HandledOutcome.INSUFFICIENT:
        return HALF
    return ONE


def feasibility_value(
    backups: BackupPolicy,
    backup_cadence_days: int,
    policy: AdjusterPolicy = DEFAULT_ADJUSTER_POLICY,
) -> Fraction:
    """Restore feasibility from backup coverage and freshness.

    Coverage maps to the nearest rung of {0, 0.25, 0.5, 0.75, 1}, ties
    rounding down. The top rung additionally requires the last backup to
    be no older than the backup cadence; a stale full backup scores 0.75.
    """
    if backup_cadence_days < 1:
        raise ModelError("RangeError", "backup_cadence_days must be >= 1")
    coverage = backups.coverage_fraction
    if coverage >= policy.feasibility_full_coverage:
        if backups.last_backup_age_days <= backup_cadence_days:
            return ONE
        return Fraction(3, 4)
    value = ZERO
    for lower, upper in zip(_PARTIAL_GRID, _PARTIAL_GRID[1:]):
        if coverage > (lower + upper) / 2:
            value = upper
    return value
