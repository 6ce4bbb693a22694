"""Per-application pay/resist scoring.

For each affected application a weighted decision factor is computed
from the six assessed values (framing subtracts; everything else adds).
Criticality then redistributes the factors: applications above the mean
criticality are scored up, those below are scored down, in proportion
to their distance from the mean over the criticality mass. An
application crosses into "pay" only when its adjusted factor strictly
exceeds the scenario threshold.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .model import (
    Application,
    CostComparison,
    CriticalityClass,
    CriticalityScale,
    Decision,
    DecisionReport,
    FactorAssessment,
    IncidentScenario,
    Money,
    RadsError,
    ReportRow,
    WeightProfile,
)


class EmptyScenario(RadsError):
    """No affected applications to score."""


class CurrencyMismatch(RadsError):
    """Cost comparison across different currencies."""


@dataclass(frozen=True)
class CriticalityStats:
    """Criticality mass over the affected applications."""

    weight_criticality: Fraction
    mean_criticality: Fraction
    n_affected: int

    def __post_init__(self):
        if self.weight_criticality != self.mean_criticality * self.n_affected:
            raise ValueError("weight_criticality must equal mean x n exactly")


def decision_factor(assessment: FactorAssessment, weights: WeightProfile) -> Fraction:
    """Weighted sum of the six factors; framing pulls the score down."""
    return (
        assessment.impact * weights.impact
        + assessment.feasibility * weights.feasibility
        + assessment.effort_time * weights.effort_time
        + assessment.effort_cost * weights.effort_cost
        - assessment.framing * weights.framing
        + assessment.reference * weights.reference
    )


def criticality_stats(
    apps: Sequence[Application], scale: CriticalityScale
) -> CriticalityStats:
    if not apps:
        raise EmptyScenario("no affected applications")
    caps = [scale.cap(app.criticality) for app in apps]
    weight = sum(caps)
    return CriticalityStats(
        weight_criticality=weight,
        mean_criticality=Fraction(weight, len(caps)),
        n_affected=len(caps),
    )


def adjusted_factor(
    df: Fraction,
    cap: Fraction,
    stats: CriticalityStats,
    criticality: CriticalityClass,
    exempt_medium: bool = True,
) -> Fraction:
    """Scale df by the application's criticality deviation from the mean.

    Medium applications pass through unadjusted (unless the exemption is
    disabled, which restores the zero-sum centering of the deviations).
    """
    if exempt_medium and criticality is CriticalityClass.MEDIUM:
        return df
    return df * (1 + (cap - stats.mean_criticality) / stats.weight_criticality)


def decide(adjusted: Fraction, threshold: Fraction) -> Decision:
    """Pay only on a strict threshold crossing; ties resist."""
    return Decision.PAY if adjusted > threshold else Decision.RESIST


def compare_costs(
    ransom_now: Money, value_breached: Money, recovery_cost: Money
) -> CostComparison:
    """Advisory ransom-vs-cost ratios. Informs, never decides."""
    currencies = {ransom_now.currency, value_breached.currency, recovery_cost.currency}
    if len(currencies) != 1:
        raise CurrencyMismatch(f"mixed currencies: {sorted(currencies)}")
    flags = []
    if ransom_now.amount > value_breached.amount:
        flags.append("ransom exceeds value of breached data")
    if ransom_now.amount > recovery_cost.amount:
        flags.append("ransom exceeds recovery cost")
    return CostComparison(
        ransom_to_breached=Fraction(ransom_now.amount, value_breached.amount),
        ransom_to_recovery=Fraction(ransom_now.amount, recovery_cost.amount),
        flags=tuple(flags),
    )


def evaluate(scenario: IncidentScenario, elapsed_days: Fraction | int = 0) -> DecisionReport:
    """Score every affected application at the given day since the attack.

    Pure: identical (scenario, elapsed_days) inputs always produce an
    identical report.
    """
    from .whatif import ransom_at  # engine <-> whatif would cycle at import

    elapsed = Fraction(elapsed_days)
    if elapsed < 0:
        raise ValueError("elapsed_days must be >= 0")
    affected = scenario.affected_applications()
    if not affected:
        raise EmptyScenario("no affected applications")
    stats = criticality_stats(affected, scenario.scale)
    rows = []
    for app in affected:
        df = decision_factor(app.assessment, scenario.weights)
        cap = scenario.scale.cap(app.criticality)
        adjusted = adjusted_factor(
            df, cap, stats, app.criticality, exempt_medium=scenario.exempt_medium
        )
        rows.append(
            ReportRow(
                app_id=app.id,
                name=app.name,
                criticality=app.criticality,
                cap=cap,
                decision_factor=df,
                adjusted_factor=adjusted,
                decision=decide(adjusted, scenario.threshold),
            )
        )
    ransom_now = Money(
        amount=ransom_at(scenario.ransom, elapsed),
        currency=scenario.ransom.currency_code,
    )
    costs = compare_costs(
        ransom_now, scenario.value_breached, scenario.estimated_recovery_cost
    )
    return DecisionReport(
        scenario_id=scenario.id,
        elapsed_days=elapsed,
        threshold=scenario.threshold,
        rows=tuple(rows),
        mean_criticality=stats.mean_criticality,
        weight_criticality=stats.weight_criticality,
        ransom_now=ransom_now,
        costs=costs,
    )
