import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from rads.documents import validate_scenario
from rads.engine import (
    CriticalityStats,
    CurrencyMismatch,
    EmptyScenario,
    adjusted_factor,
    compare_costs,
    criticality_stats,
    decide,
    decision_factor,
    evaluate,
)
from rads.model import (
    Application,
    CriticalityClass,
    Decision,
    DEFAULT_SCALE,
    FactorAssessment,
    Money,
    WeightProfile,
)

from .conftest import random_scenario_doc, random_weights
from .oracle import oracle_evaluate

CROWN_WEIGHTS = WeightProfile(
    impact=Fraction(20),
    feasibility=Fraction(20),
    effort_time=Fraction(10),
    effort_cost=Fraction(10),
    framing=Fraction(20),
    reference=Fraction(20),
)
CROWN_ASSESSMENT = FactorAssessment(
    impact=Fraction(1, 2),
    feasibility=Fraction(3, 4),
    effort_time=Fraction(1, 4),
    effort_cost=Fraction(3, 4),
    framing=Fraction(3, 4),
    reference=Fraction(3, 4),
)

factors6 = st.tuples(*[st.integers(0, 10000) for _ in range(6)])


def assessment_from(values) -> FactorAssessment:
    return FactorAssessment(*[Fraction(v, 10000) for v in values])


def weights_from_seed(seed: int) -> WeightProfile:
    names = ("impact", "feasibility", "effort_time", "effort_cost", "framing", "reference")
    ws = random_weights(random.Random(seed))
    return WeightProfile(**dict(zip(names, ws)))


class TestDecisionFactor:
    def test_worked_example(self):
        assert decision_factor(CROWN_ASSESSMENT, CROWN_WEIGHTS) == 35

    def test_all_zero_factors(self):
        assert decision_factor(assessment_from([0] * 6), CROWN_WEIGHTS) == 0

    def test_all_one_factors(self):
        # 20 + 20 + 10 + 10 - 20 + 20
        assert decision_factor(assessment_from([10000] * 6), CROWN_WEIGHTS) == 60

    @given(factors6, st.integers(0, 2**32))
    def test_bounds(self, values, seed):
        weights = weights_from_seed(seed)
        df = decision_factor(assessment_from(values), weights)
        assert -weights.framing <= df <= 100 - weights.framing

    @given(factors6, st.integers(0, 2**32), st.integers(0, 5), st.integers(0, 10000))
    def test_monotonicity_per_factor(self, values, seed, index, new_value):
        names = ("impact", "feasibility", "effort_time", "effort_cost", "framing", "reference")
        weights = weights_from_seed(seed)
        base = assessment_from(values)
        bumped = base.replace(**{names[index]: Fraction(max(values[index], new_value), 10000)})
        low, high = decision_factor(base, weights), decision_factor(bumped, weights)
        if names[index] == "framing":
            assert high <= low
        else:
            assert high >= low


class TestCriticalityStats:
    def test_worked_example(self):
        apps = [Application("c", "c", CriticalityClass.CRITICAL, True, CROWN_ASSESSMENT)]
        apps += [
            Application(f"l{i}", "l", CriticalityClass.LOW, True, CROWN_ASSESSMENT)
            for i in range(15)
        ]
        stats = criticality_stats(apps, DEFAULT_SCALE)
        assert stats.weight_criticality == 35
        assert stats.mean_criticality == Fraction(35, 16)
        assert stats.mean_criticality == Fraction("2.1875")
        assert stats.n_affected == 16

    def test_single_app(self):
        apps = [Application("c", "c", CriticalityClass.CRITICAL, True, CROWN_ASSESSMENT)]
        stats = criticality_stats(apps, DEFAULT_SCALE)
        assert stats.weight_criticality == 5
        assert stats.mean_criticality == 5

    def test_two_apps(self):
        apps = [
            Application("c", "c", CriticalityClass.CRITICAL, True, CROWN_ASSESSMENT),
            Application("h", "h", CriticalityClass.HIGH, True, CROWN_ASSESSMENT),
        ]
        stats = criticality_stats(apps, DEFAULT_SCALE)
        assert stats.weight_criticality == 8
        assert stats.mean_criticality == 4

    def test_empty_rejected(self):
        with pytest.raises(EmptyScenario):
            criticality_stats([], DEFAULT_SCALE)

    def test_invariant_weight_equals_mean_times_n(self):
        with pytest.raises(ValueError):
            CriticalityStats(Fraction(10), Fraction(3), 3)


class TestAdjustedFactor:
    STATS = CriticalityStats(Fraction(35), Fraction(35, 16), 16)

    def test_critical_above_mean(self):
        # 35 x (1 + (5 - 35/16)/35) = 35 + 45/16
        value = adjusted_factor(Fraction(35), Fraction(5), self.STATS, CriticalityClass.CRITICAL)
        assert value == Fraction(35) + Fraction(45, 16)
        assert value == Fraction("37.8125")

    def test_low_below_mean(self):
        value = adjusted_factor(Fraction(35), Fraction(2), self.STATS, CriticalityClass.LOW)
        assert value == Fraction("34.8125")

    def test_cap_at_mean_is_identity(self):
        stats = CriticalityStats(Fraction(12), Fraction(4), 3)
        assert adjusted_factor(Fraction(50), Fraction(4), stats, CriticalityClass.CRITICAL) == 50

    def test_medium_exempt_by_default(self):
        value = adjusted_factor(
            Fraction(35), Fraction(5, 2), self.STATS, CriticalityClass.MEDIUM
        )
        assert value == 35

    def test_medium_adjusted_when_exemption_off(self):
        value = adjusted_factor(
            Fraction(35), Fraction(5, 2), self.STATS, CriticalityClass.MEDIUM, exempt_medium=False
        )
        assert value == 35 * (1 + (Fraction(5, 2) - Fraction(35, 16)) / 35)

    def test_high_uses_same_formula_as_critical(self):
        stats = CriticalityStats(Fraction(8), Fraction(4), 2)
        high = adjusted_factor(Fraction(20), Fraction(3), stats, CriticalityClass.HIGH)
        critical = adjusted_factor(Fraction(20), Fraction(3), stats, CriticalityClass.CRITICAL)
        assert high == critical

    @given(
        st.integers(1, 10**6),
        st.integers(1, 400),
        st.integers(1, 400),
        st.integers(1, 1000),
        st.integers(1, 20),
    )
    def test_strictly_increasing_in_cap(self, df_raw, cap1, cap2, weight_raw, n):
        if cap1 == cap2:
            return
        df = Fraction(df_raw, 100)
        lo_cap, hi_cap = sorted((Fraction(cap1, 4), Fraction(cap2, 4)))
        weight = Fraction(weight_raw)
        stats = CriticalityStats(weight, Fraction(weight, n), n)
        lo = adjusted_factor(df, lo_cap, stats, CriticalityClass.CRITICAL)
        hi = adjusted_factor(df, hi_cap, stats, CriticalityClass.CRITICAL)
        assert hi > lo

    def test_centering_with_exemption_off(self):
        # equal decision factors: adjusted factors average back to df exactly
        rng = random.Random(7)
        for _ in range(100):
            doc = random_scenario_doc(rng)
            doc["exempt_medium"] = False
            scenario = validate_scenario(doc).scenario
            affected = scenario.affected_applications()
            stats = criticality_stats(affected, scenario.scale)
            df = Fraction(rng.randint(-100, 600), 10)
            values = [
                adjusted_factor(
                    df, scenario.scale.cap(a.criticality), stats, a.criticality,
                    exempt_medium=False,
                )
                for a in affected
            ]
            assert sum(values) / len(values) == df


class TestDecide:
    def test_below_threshold_resists(self):
        assert decide(Fraction("37.8125"), Fraction(65)) is Decision.RESIST

    def test_exact_threshold_resists(self):
        assert decide(Fraction(65), Fraction(65)) is Decision.RESIST

    def test_above_threshold_pays(self):
        assert decide(Fraction(70), Fraction(65)) is Decision.PAY


class TestCompareCosts:
    def test_ratios_and_flags(self):
        result = compare_costs(
            Money(1_000_000_000, "USD"),
            Money(4_000_000_000, "USD"),
            Money(500_000_000, "USD"),
        )
        assert result.ransom_to_breached == Fraction(1, 4)
        assert result.ransom_to_recovery == 2
        assert result.flags == ("ransom exceeds recovery cost",)

    def test_identity(self):
        money = Money(123, "EUR")
        result = compare_costs(money, money, money)
        assert result.ransom_to_breached == 1
        assert result.ransom_to_recovery == 1
        assert result.flags == ()

    def test_currency_mismatch(self):
        with pytest.raises(CurrencyMismatch):
            compare_costs(Money(1, "USD"), Money(1, "EUR"), Money(1, "USD"))


class TestEvaluate:
    def test_crown_report(self, crown_scenario):
        report = evaluate(crown_scenario, 0)
        assert len(report.rows) == 16
        values = {row.adjusted_factor for row in report.rows}
        assert values == {Fraction("37.8125"), Fraction("34.8125")}
        assert all(row.decision is Decision.RESIST for row in report.rows)
        assert report.ransom_now == Money(1_000_000_000, "USD")
        assert report.mean_criticality == Fraction("2.1875")
        assert report.weight_criticality == 35

    def test_single_medium_app_passes_through(self, crown_doc):
        doc = {
            **crown_doc,
            "applications": [
                {
                    "id": "m1",
                    "name": "m1",
                    "criticality": "Medium",
                    "affected": True,
                    "assessment": crown_doc["applications"][0]["assessment"],
                }
            ],
        }
        scenario = validate_scenario(doc).scenario
        report = evaluate(scenario, 0)
        assert report.rows[0].adjusted_factor == report.rows[0].decision_factor

    def test_negative_day_rejected(self, crown_scenario):
        with pytest.raises(ValueError):
            evaluate(crown_scenario, -1)

    def test_determinism(self, crown_scenario):
        from rads.documents import report_to_json

        a = report_to_json(evaluate(crown_scenario, Fraction(7, 2)))
        b = report_to_json(evaluate(crown_scenario, Fraction(7, 2)))
        assert a == b

    def test_matches_oracle_on_random_scenarios(self):
        rng = random.Random(99)
        for _ in range(200):
            doc = random_scenario_doc(rng)
            scenario = validate_scenario(doc).scenario
            elapsed = Fraction(rng.randint(0, 4 * 90), 4)
            report = evaluate(scenario, elapsed)
            expected = oracle_evaluate(doc, elapsed)
            assert report.weight_criticality == expected["weight_criticality"]
            assert report.mean_criticality == expected["mean_criticality"]
            assert report.ransom_now.amount == expected["ransom_now"]
            assert len(report.rows) == len(expected["rows"])
            for row, exp in zip(report.rows, expected["rows"]):
                assert row.app_id == exp["app_id"]
                assert row.cap == exp["cap"]
                assert row.decision_factor == exp["df"]
                assert row.adjusted_factor == exp["af"]
                assert row.decision.value == exp["decision"]
