"""Synthetic FAR/FRR evaluation command."""

import logging
from pathlib import Path

import typer
from rich.table import Table

from chebauth.cli.common import console, exit_on_error, load_settings
from chebauth.models.trial import EvalConfig
from chebauth.utils.trial import format_report, run_eval, save_report


def evaluate(
    trials: int = typer.Option(1000, "--trials", "-n", help="Genuine and impostor attempts"),
    noise: int = typer.Option(None, "--noise", help="Genuine flips per block (default t)"),
    seed: int = typer.Option(0, "--seed", help="Seed for a reproducible run"),
    population: int = typer.Option(16, "--population", help="Enrolled users"),
    output: Path = typer.Option(None, "--output", "-o", help="Also write the report as JSON"),
    config_path: Path = typer.Option(None, "--config", "-c", help="key=value config file"),
    verbose: bool = typer.Option(False, "--verbose", "-v", help="Debug logging"),
):
    """
    Measure FAR and FRR over simulated sessions.

    Example:
        chebauth eval --trials 10000 --noise 2 --seed 7
    """
    settings = load_settings(config_path, verbose)
    if not verbose:
        # Every impostor attempt is a logged rejection
        logging.getLogger("chebauth.protocol").setLevel(logging.ERROR)

    code = settings.code
    with exit_on_error():
        config = EvalConfig(
            trials=trials,
            noise=code.t if noise is None else noise,
            seed=seed,
            population=population,
            code=code,
            p=settings.prime,
            window_ms=settings.window_ms,
        )
        with console.status(f"[bold green]Running {2 * trials} sessions..."):
            report = run_eval(config)

    if report.reasons:
        table = Table(title="Rejections")
        table.add_column("Reason", style="cyan")
        table.add_column("Count", justify="right", style="magenta")
        for reason, count in report.reasons.items():
            table.add_row(reason, str(count))
        console.print(table)

    typer.echo(format_report(report), nl=False)

    if output:
        save_report(report, output)
        console.print(f"Report: {output}")
