import json
import random
from fractions import Fraction
from pathlib import Path

import pytest

REPO_ROOT = Path(__file__).resolve().parent.parent
CROWN_PATH = REPO_ROOT / "scenarios" / "crown.json"


@pytest.fixture()
def crown_doc():
    return json.loads(CROWN_PATH.read_text())


@pytest.fixture()
def crown_scenario(crown_doc):
    from rads.documents import validate_scenario

    result = validate_scenario(crown_doc)
    assert result.ok, result.violations
    return result.scenario


def random_weights(rng: random.Random) -> list[Fraction]:
    """Six non-negative quarter-point weights summing to 100 exactly."""
    cuts = sorted(rng.randint(0, 400) for _ in range(5))
    parts = [cuts[0]] + [b - a for a, b in zip(cuts, cuts[1:])] + [400 - cuts[4]]
    return [Fraction(p, 4) for p in parts]


def random_scenario_doc(rng: random.Random, max_apps: int = 10) -> dict:
    """A structurally and semantically valid random scenario document."""
    n = rng.randint(1, max_apps)
    weights = random_weights(rng)
    caps = sorted(rng.sample(range(1, 81), 4), reverse=True)
    classes = ["Critical", "High", "Medium", "Low"]

    apps = []
    for i in range(n):
        affected = True if i == 0 else rng.random() < 0.7
        app = {
            "id": f"app-{i:02d}",
            "name": f"Application {i:02d}",
            "criticality": rng.choice(classes),
            "affected": affected,
        }
        if affected or rng.random() < 0.3:
            app["assessment"] = {
                name: str(Fraction(rng.randint(0, 10000), 10000))
                for name in (
                    "impact",
                    "feasibility",
                    "effort_time",
                    "effort_cost",
                    "framing",
                    "reference",
                )
            }
        apps.append(app)

    period = rng.randint(1, 30)
    deadline = period + rng.randint(0, 3 * period)
    names = ["impact", "feasibility", "effort_time", "effort_cost", "framing", "reference"]
    return {
        "id": f"scn-{rng.randrange(10**9):09d}",
        "organisation": "Example Org",
        "applications": apps,
        "weights": {name: str(w) for name, w in zip(names, weights)},
        "scale": {cls: str(Fraction(cap, 4)) for cls, cap in zip(classes, caps)},
        "ransom": {
            "base_amount": rng.randint(1, 10**12),
            "doubling_period_days": period,
            "deadline_days": deadline,
            "currency_code": "USD",
        },
        "value_breached": {"amount": rng.randint(1, 10**12), "currency": "USD"},
        "estimated_recovery_days": str(Fraction(rng.randint(1, 400), 4)),
        "estimated_recovery_cost": {"amount": rng.randint(1, 10**12), "currency": "USD"},
        "history": [],
        "threshold": str(Fraction(rng.randint(1, 10000), 100)),
        "exempt_medium": rng.random() < 0.5,
    }
