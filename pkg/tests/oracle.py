"""Independent straight-line re-computation used to cross-check the engine.

Works directly on raw scenario documents (plain dicts with string
rationals) and deliberately shares no code with the package beyond the
standard library, so an engine bug cannot hide in a shared helper.
"""

from fractions import Fraction


def oracle_ransom_at(ransom_doc, elapsed):
    """Enumerate the doubling schedule step by step."""
    amount = ransom_doc["base_amount"]
    period = ransom_doc["doubling_period_days"]
    deadline = ransom_doc["deadline_days"]
    boundary = period
    while boundary < deadline and Fraction(elapsed) >= boundary:
        amount *= 2
        boundary += period
    if Fraction(elapsed) >= deadline:
        # frozen at the last amount scheduled before expiry
        amount = ransom_doc["base_amount"]
        boundary = period
        while boundary < deadline:
            amount *= 2
            boundary += period
    return amount


def oracle_evaluate(doc, elapsed=0):
    """Whole-scenario reference result as plain values."""
    weights = {k: Fraction(v) for k, v in doc["weights"].items()}
    scale = {k: Fraction(v) for k, v in doc["scale"].items()}
    threshold = Fraction(doc.get("threshold", 65))
    exempt_medium = doc.get("exempt_medium", True)

    affected = [a for a in doc["applications"] if a["affected"]]
    caps = [scale[a["criticality"]] for a in affected]
    weight_crit = Fraction(0)
    for cap in caps:
        weight_crit += cap
    mean_crit = weight_crit / len(caps)

    rows = []
    for app, cap in zip(affected, caps):
        a = {k: Fraction(v) for k, v in app["assessment"].items() if k != "advisory_notes"}
        df = (
            a["impact"] * weights["impact"]
            + a["feasibility"] * weights["feasibility"]
            + a["effort_time"] * weights["effort_time"]
            + a["effort_cost"] * weights["effort_cost"]
            - a["framing"] * weights["framing"]
            + a["reference"] * weights["reference"]
        )
        if exempt_medium and app["criticality"] == "Medium":
            af = df
        else:
            af = df * (1 + (cap - mean_crit) / weight_crit)
        rows.append(
            {
                "app_id": app["id"],
                "cap": cap,
                "df": df,
                "af": af,
                "decision": "Pay" if af > threshold else "Resist",
            }
        )
    return {
        "rows": rows,
        "weight_criticality": weight_crit,
        "mean_criticality": mean_crit,
        "ransom_now": oracle_ransom_at(doc["ransom"], elapsed),
    }
