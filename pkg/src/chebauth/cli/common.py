"""Shared console, option handling and exit codes for the CLI."""

from collections.abc import Iterator
from contextlib import contextmanager
from pathlib import Path
from typing import Any

import typer
from pydantic import ValidationError
from rich.console import Console

from chebauth.config import Config, load_config
from chebauth.errors import (
    ConfigError,
    FramingError,
    ParameterError,
    ProtocolReject,
    StoreError,
)
from chebauth.utils.logging import setup_logging

console = Console()

EXIT_REJECT = 1
EXIT_USAGE = 2


def load_settings(config_path: Path | None, verbose: bool = False, **overrides: Any) -> Config:
    """Set up logging and load the configuration, exiting 2 when it is invalid."""
    setup_logging(verbose)
    try:
        return load_config(config_path, **overrides)
    except ConfigError as e:
        console.print(f"[red]✗ Invalid configuration:[/red] {e}")
        raise typer.Exit(EXIT_USAGE) from e


def password_bytes(password: str | None) -> bytes:
    if not password:
        console.print("[red]✗ A password is required (--password or CBA_PASSWORD)[/red]")
        raise typer.Exit(EXIT_USAGE)
    return password.encode("utf-8")


@contextmanager
def exit_on_error() -> Iterator[None]:
    """Map library errors to the CLI exit-code contract."""
    try:
        yield
    except (ConfigError, ParameterError, ValidationError) as e:
        console.print(f"[red]✗ {e}[/red]")
        raise typer.Exit(EXIT_USAGE) from e
    except ProtocolReject as e:
        console.print(f"[red]✗ Rejected:[/red] {e.reason.value}")
        raise typer.Exit(EXIT_REJECT) from e
    except (FramingError, StoreError, ConnectionError, TimeoutError) as e:
        console.print(f"[red]✗ {type(e).__name__}:[/red] {e}")
        raise typer.Exit(EXIT_REJECT) from e
