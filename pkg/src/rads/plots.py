"""Figure rendering for reports and sweeps.

Writes matplotlib figures to files next to the delimited output; values
are converted to float here only, for drawing.
"""

from __future__ import annotations

from fractions import Fraction
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .model import Decision, DecisionReport, RansomDemand
from .rational import format_fixed
from .whatif import SweepResult, ransom_at

_PAY_COLOR = "#c0392b"
_RESIST_COLOR = "#2c7fb8"


def save_adjusted_factor_figure(report: DecisionReport, path: Path | str) -> Path:
    """Bar chart of adjusted factors per application against the threshold."""
    path = Path(path)
    fig, ax = plt.subplots(figsize=(max(6.0, 0.45 * len(report.rows) + 2), 4.5))
    xs = range(len(report.rows))
    values = [float(row.adjusted_factor) for row in report.rows]
    colors = [
        _PAY_COLOR if row.decision is Decision.PAY else _RESIST_COLOR
        for row in report.rows
    ]
    ax.bar(xs, values, color=colors)
    ax.axhline(
        float(report.threshold),
        color="black",
        linestyle="--",
        linewidth=1,
        label=f"threshold {format_fixed(report.threshold)}",
    )
    ax.set_xticks(list(xs))
    ax.set_xticklabels([row.app_id for row in report.rows], rotation=60, ha="right", fontsize=7)
    ax.set_ylabel("adjusted factor")
    ax.set_title(f"{report.scenario_id}: adjusted factors at day "
                 f"{format_fixed(report.elapsed_days, 2)}")
    ax.legend(loc="upper right", fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def save_ransom_schedule_figure(
    demand: RansomDemand, path: Path | str, horizon_days: int | None = None
) -> Path:
    """Step plot of the demanded amount over time, deadline marked."""
    path = Path(path)
    horizon = horizon_days if horizon_days is not None else demand.deadline_days + demand.doubling_period_days
    days = [Fraction(i, 4) for i in range(4 * horizon + 1)]
    amounts = [ransom_at(demand, d) / 100 for d in days]
    fig, ax = plt.subplots(figsize=(7, 4))
    ax.step([float(d) for d in days], amounts, where="post", color=_PAY_COLOR)
    ax.axvline(demand.deadline_days, color="black", linestyle=":", linewidth=1)
    ax.annotate(
        "offer expires",
        xy=(demand.deadline_days, max(amounts)),
        xytext=(3, -10),
        textcoords="offset points",
        fontsize=8,
    )
    ax.set_xlabel("days since attack")
    ax.set_ylabel(f"demand ({demand.currency_code}, major units)")
    ax.set_title(
        f"ransom doubles every {demand.doubling_period_days} day(s), "
        f"deadline day {demand.deadline_days}"
    )
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def save_sweep_figure(result: SweepResult, path: Path | str) -> Path:
    """Adjusted-factor curves and pay counts across the sweep grid."""
    path = Path(path)
    samples = [float(p.sample) for p in result.points]
    fig, (ax_af, ax_pay) = plt.subplots(
        2, 1, figsize=(7, 6), sharex=True, height_ratios=[2, 1]
    )
    first = result.points[0].report
    for i, row in enumerate(first.rows):
        series = [float(p.report.rows[i].adjusted_factor) for p in result.points]
        ax_af.plot(samples, series, marker="o", markersize=3, linewidth=1, label=row.app_id)
    if len(first.rows) <= 8:
        ax_af.legend(fontsize=7)
    ax_af.set_ylabel("adjusted factor")
    if result.request.quantity.kind != "threshold":
        ax_af.axhline(float(first.threshold), color="black", linestyle="--", linewidth=1)
    ax_pay.step(samples, [p.pay_count for p in result.points], where="post", color=_PAY_COLOR)
    ax_pay.set_ylabel("applications to pay for")
    ax_pay.set_xlabel(str(result.request.quantity))
    fig.suptitle(f"sweep over {result.request.quantity}")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path
