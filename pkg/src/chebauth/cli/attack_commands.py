"""Adversary scenario commands."""

import logging
from pathlib import Path

import typer
from rich.panel import Panel
from rich.table import Table

from chebauth.cli.common import EXIT_REJECT, EXIT_USAGE, console, exit_on_error, load_settings
from chebauth.config import Config
from chebauth.models.attack import AdversaryScript, AttackOutcome, ScenarioReport
from chebauth.netio.adversary import run_attack
from chebauth.netio.scenarios import SCENARIOS, run_scenario


def attack(
    scenario: list[str] = typer.Option(
        None, "--scenario", "-s", help=f"Scenario to run, repeatable ({', '.join(SCENARIOS)})"
    ),
    script: Path = typer.Option(None, "--script", help="YAML adversary script"),
    phase: str = typer.Option("auth", "--phase", help="Phase the script attacks: enroll or auth"),
    trials: int = typer.Option(None, "--trials", "-n", help="Runs per scenario"),
    seed: int = typer.Option(0, "--seed", help="Seed for a reproducible run"),
    faithful_paper: bool = typer.Option(
        False, "--faithful-paper", help="Timestamp-only replay check (no duplicate-M1 cache)"
    ),
    config_path: Path = typer.Option(None, "--config", "-c", help="key=value config file"),
    verbose: bool = typer.Option(False, "--verbose", "-v", help="Debug logging"),
):
    """
    Run adversary scenarios against an in-process client and server.

    Without --scenario or --script every named scenario runs.

    Example:
        chebauth attack --scenario replay-in-window --faithful-paper
        chebauth attack --script drop-confirm.yaml --phase auth
    """
    settings = load_settings(config_path, verbose, faithful_paper=faithful_paper or None)
    if not verbose:
        logging.getLogger("chebauth.protocol").setLevel(logging.ERROR)

    if script is not None:
        _run_script(script, phase, settings, seed)
        return

    names = scenario or list(SCENARIOS)
    unknown = [name for name in names if name not in SCENARIOS]
    if unknown:
        console.print(
            f"[red]✗ Unknown scenario: {', '.join(unknown)}[/red] "
            f"(choose from {', '.join(SCENARIOS)})"
        )
        raise typer.Exit(EXIT_USAGE)

    mode = "faithful-paper" if settings.faithful_paper else "hardened"
    console.print(f"[bold blue]chebauth[/bold blue] - adversary scenarios ({mode} mode)\n")

    reports: list[ScenarioReport] = []
    with exit_on_error():
        for name in names:
            with console.status(f"[bold green]Running {name}..."):
                report = run_scenario(name, settings.code, settings.policy, seed, trials)
            reports.append(report)
            status = "✓" if report.passed else "✗"
            console.print(f"{status} {name}")

    _display_reports(reports)

    if not all(r.passed for r in reports):
        raise typer.Exit(EXIT_REJECT)


def _run_script(script: Path, phase: str, settings: Config, seed: int) -> None:
    if phase not in ("enroll", "auth"):
        console.print(f"[red]✗ --phase must be enroll or auth, got {phase!r}[/red]")
        raise typer.Exit(EXIT_USAGE)

    with exit_on_error():
        try:
            adversary = AdversaryScript.from_yaml(script)
        except OSError as e:
            console.print(f"[red]✗ Cannot read script: {e}[/red]")
            raise typer.Exit(EXIT_USAGE) from e
        outcome = run_attack(adversary, phase, settings.code, settings.policy, seed=seed)

    _display_outcome(outcome, script)


def _display_outcome(outcome: AttackOutcome, script: Path) -> None:
    table = Table(title=f"Transcript ({script.name})")
    table.add_column("#", justify="right")
    table.add_column("Dir", style="cyan")
    table.add_column("Message", style="magenta")
    table.add_column("Action")
    table.add_column("Bytes", justify="right")
    for entry in outcome.transcript:
        table.add_row(
            str(entry.index),
            entry.direction,
            entry.message_type,
            entry.action.value,
            str(len(entry.original)),
        )
    console.print(table)

    verdict = outcome.status.value
    if outcome.rejected_by:
        verdict += f" by {outcome.rejected_by} ({outcome.reason.value})"
    if outcome.keys_match is not None:
        verdict += f" | keys match: {outcome.keys_match}"
    console.print(Panel(verdict, title="Outcome", border_style="blue"))


def _display_reports(reports: list[ScenarioReport]) -> None:
    table = Table(title=f"Scenarios ({len(reports)})")
    table.add_column("Scenario", style="cyan")
    table.add_column("Runs", justify="right")
    table.add_column("Expected")
    table.add_column("Observed")
    table.add_column("Result", style="green")
    for report in reports:
        table.add_row(
            report.name,
            str(report.trials),
            report.expected,
            report.observed,
            "PASS" if report.passed else "[red]FAIL[/red]",
        )
    console.print(table)

    for report in reports:
        for note in report.notes:
            console.print(f"   [dim]{report.name}:[/dim] {note}")

    passed = sum(r.passed for r in reports)
    console.print(
        f"\n[bold]Summary:[/bold] {len(reports)} total | [green]{passed} passed[/green] | "
        f"[red]{len(reports) - passed} failed[/red]"
    )
