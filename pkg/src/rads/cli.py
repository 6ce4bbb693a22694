"""Batch command line: validate, evaluate, sweep, report, serve.

Exit codes: 0 success, 1 validation failure, 2 I/O failure. Diagnostics
go to stderr; the requested output is the only thing on stdout.
"""

from __future__ import annotations

import sys
from dataclasses import replace
from fractions import Fraction
from pathlib import Path

import click

from .documents import (
    report_to_dict,
    report_to_json,
    to_canonical_json,
    validate_scenario_bytes,
)
from .engine import evaluate
from .model import IncidentScenario, ModelError, RadsError
from .rational import format_fixed, format_rational, parse_rational
from .store import IncidentStore
from .whatif import SweepRequest, SweptQuantity, sweep, sweep_csv

EXIT_VALIDATION = 1
EXIT_IO = 2


def _fail(code: int, message: str) -> None:
    click.echo(f"error: {message}", err=True)
    sys.exit(code)


def _read_scenario(path: str) -> IncidentScenario:
    try:
        raw = Path(path).read_bytes()
    except OSError as err:
        _fail(EXIT_IO, f"cannot read {path}: {err}")
    result = validate_scenario_bytes(raw)
    if not result.ok:
        for violation in result.violations:
            click.echo(f"{violation.code} at {violation.path or '/'}: {violation.message}", err=True)
        _fail(EXIT_VALIDATION, f"{path} is not a valid scenario")
    return result.scenario


def _parse_day(raw: str) -> Fraction:
    try:
        day = parse_rational(raw)
    except ValueError:
        _fail(EXIT_VALIDATION, f"--day is not a rational: {raw!r}")
    if day < 0:
        _fail(EXIT_VALIDATION, "--day must be >= 0")
    return day


def _format_money(amount: int, currency: str) -> str:
    major, minor = divmod(amount, 100)
    return f"{major:,}.{minor:02d} {currency}"


def _render_table(report) -> str:
    id_width = max(len("Application"), *(len(r.app_id) for r in report.rows))
    lines = [
        f"Incident {report.scenario_id}: day {format_rational(report.elapsed_days)}, "
        f"ransom now {_format_money(report.ransom_now.amount, report.ransom_now.currency)}",
        "",
        f"{'Application':<{id_width}}  {'Criticality':<11}  {'CAP':>9}  {'DF':>9}  {'AF':>9}  Decision",
    ]
    for row in report.rows:
        lines.append(
            f"{row.app_id:<{id_width}}  {row.criticality.value:<11}  "
            f"{format_fixed(row.cap):>9}  {format_fixed(row.decision_factor):>9}  "
            f"{format_fixed(row.adjusted_factor):>9}  {row.decision.value}"
        )
    lines += [
        "",
        f"Weight criticality: {format_fixed(report.weight_criticality)}",
        f"Mean criticality:   {format_fixed(report.mean_criticality)}",
        f"Ransom/breached:    {format_fixed(report.costs.ransom_to_breached)}",
        f"Ransom/recovery:    {format_fixed(report.costs.ransom_to_recovery)}",
    ]
    for flag in report.costs.flags:
        lines.append(f"note: {flag}")
    lines.append(_summary_line(report))
    return "\n".join(lines)


def _summary_line(report) -> str:
    verdict = "PAY" if report.pay_count else "RESIST"
    return (
        f"{report.pay_count}/{len(report.rows)} above threshold "
        f"{format_rational(report.threshold)}: {verdict}"
    )


def _report_csv(report) -> str:
    import csv
    import io

    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(
        ["app_id", "name", "criticality", "cap", "decision_factor", "adjusted_factor", "decision"]
    )
    for row in report.rows:
        writer.writerow(
            [
                row.app_id,
                row.name,
                row.criticality.value,
                format_rational(row.cap),
                format_rational(row.decision_factor),
                format_rational(row.adjusted_factor),
                row.decision.value,
            ]
        )
    return out.getvalue()


@click.group()
def main():
    """Ransomware incident decision support."""


@main.command()
@click.argument("scenario_path", type=str)
def validate(scenario_path):
    """Check a scenario file; exit 1 listing every violation if invalid."""
    try:
        raw = Path(scenario_path).read_bytes()
    except OSError as err:
        _fail(EXIT_IO, f"cannot read {scenario_path}: {err}")
    result = validate_scenario_bytes(raw)
    if result.ok:
        click.echo(f"{scenario_path}: valid ({len(result.scenario.applications)} applications)")
        return
    for violation in result.violations:
        click.echo(f"{violation.code} at {violation.path or '/'}: {violation.message}")
    sys.exit(EXIT_VALIDATION)


@main.command(name="evaluate")
@click.option("-s", "--scenario", "scenario_path", required=True, help="Scenario JSON file.")
@click.option("--day", default="0", show_default=True, help="Days elapsed since the attack.")
@click.option("--threshold", default=None, help="Override the scenario's pay threshold.")
@click.option(
    "--format", "fmt", type=click.Choice(["table", "json", "csv"]), default="table",
    show_default=True, help="Output format.",
)
@click.option("--save", is_flag=True, help="Persist scenario and report to the store.")
@click.option("--store", "store_path", envvar="RADS_STORE", default="rads-store", show_default=True)
def evaluate_cmd(scenario_path, day, threshold, fmt, save, store_path):
    """Evaluate a scenario and print the per-application decision report."""
    scenario = _read_scenario(scenario_path)
    elapsed = _parse_day(day)
    if threshold is not None:
        try:
            value = parse_rational(threshold)
            scenario = replace(scenario, threshold=value)
        except (ValueError, ModelError) as err:
            _fail(EXIT_VALIDATION, f"--threshold invalid: {err}")
    try:
        report = evaluate(scenario, elapsed)
    except RadsError as err:
        _fail(EXIT_VALIDATION, str(err))
    if save:
        store = IncidentStore(store_path)
        base = store.current_version(scenario.id) if store.exists(scenario.id) else None
        version = store.save_scenario(scenario, base_version=base, actor="cli")
        store.save_report(scenario.id, version, report, actor="cli")
        click.echo(f"saved {scenario.id} v{version} to {store_path}", err=True)
    if fmt == "json":
        click.echo(report_to_json(report).decode("utf-8"))
    elif fmt == "csv":
        click.echo(_report_csv(report), nl=False)
    else:
        click.echo(_render_table(report))


@main.command(name="sweep")
@click.option("-s", "--scenario", "scenario_path", required=True)
@click.option(
    "--quantity", required=True,
    help='What to vary: "threshold", "elapsed_days", "weight:<name>" or "factor:<app>:<name>".',
)
@click.option("--grid", required=True, help="Comma-separated sample points, increasing.")
@click.option("--day", default="0", show_default=True, help="Fixed elapsed day for non-day sweeps.")
@click.option(
    "--format", "fmt", type=click.Choice(["csv", "json"]), default="csv", show_default=True
)
@click.option("--plot", "plot_path", default=None, help="Also render the sweep to this PNG.")
def sweep_cmd(scenario_path, quantity, grid, day, fmt, plot_path):
    """Re-evaluate across a grid of values for one quantity."""
    scenario = _read_scenario(scenario_path)
    try:
        request = SweepRequest(
            quantity=SweptQuantity.parse(quantity),
            grid=tuple(parse_rational(p.strip()) for p in grid.split(",")),
            elapsed_days=_parse_day(day),
        )
        result = sweep(scenario, request)
    except (ValueError, ModelError, RadsError) as err:
        _fail(EXIT_VALIDATION, str(err))
    if plot_path:
        from .plots import save_sweep_figure

        save_sweep_figure(result, plot_path)
        click.echo(f"wrote {plot_path}", err=True)
    if fmt == "json":
        click.echo(to_canonical_json(result.as_dict()).decode("utf-8"))
    else:
        click.echo(sweep_csv(result), nl=False)


@main.command(name="report")
@click.option("-s", "--scenario", "scenario_path", required=True)
@click.option("--day", default="0", show_default=True)
@click.option("--threshold", default=None, help="Override the scenario's pay threshold.")
@click.option(
    "--out-dir", "out_dir", required=True, type=click.Path(file_okay=False),
    help="Directory for the report files and figures.",
)
def report_cmd(scenario_path, day, threshold, out_dir):
    """Write the decision report (JSON + CSV) and figures to a directory."""
    from .plots import save_adjusted_factor_figure, save_ransom_schedule_figure

    scenario = _read_scenario(scenario_path)
    elapsed = _parse_day(day)
    if threshold is not None:
        try:
            scenario = replace(scenario, threshold=parse_rational(threshold))
        except (ValueError, ModelError) as err:
            _fail(EXIT_VALIDATION, f"--threshold invalid: {err}")
    try:
        report = evaluate(scenario, elapsed)
    except RadsError as err:
        _fail(EXIT_VALIDATION, str(err))
    out = Path(out_dir)
    try:
        out.mkdir(parents=True, exist_ok=True)
        (out / "report.json").write_bytes(report_to_json(report))
        (out / "report.csv").write_text(_report_csv(report), encoding="utf-8")
        save_adjusted_factor_figure(report, out / "adjusted_factors.png")
        save_ransom_schedule_figure(scenario.ransom, out / "ransom_schedule.png")
    except OSError as err:
        _fail(EXIT_IO, f"cannot write to {out_dir}: {err}")
    for name in ("report.json", "report.csv", "adjusted_factors.png", "ransom_schedule.png"):
        click.echo(f"wrote {out / name}")
    click.echo(_summary_line(report))


@main.command()
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", envvar="RADS_PORT", default=8000, show_default=True, type=int)
@click.option("--store", "store_path", envvar="RADS_STORE", default="rads-store", show_default=True)
def serve(host, port, store_path):
    """Run the HTTP service over the given store."""
    from .service import serve as run_service

    run_service(store_path, host=host, port=port)


if __name__ == "__main__":
    main()
