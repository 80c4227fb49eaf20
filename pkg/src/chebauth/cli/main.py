"""Main CLI entry point."""

import asyncio
from pathlib import Path
from random import Random

import typer
from rich.panel import Panel

from chebauth.cli import attack_commands, eval_commands
from chebauth.cli.common import console, exit_on_error, load_settings, password_bytes
from chebauth.config import Config
from chebauth.netio import transport
from chebauth.protocol.server import AuthServer
from chebauth.store.credential import load_credential, save_credential
from chebauth.store.file import FileStore
from chebauth.utils.biometrics import genbio as generate_vector
from chebauth.utils.biometrics import read_bio, write_bio

app = typer.Typer(
    name="chebauth",
    help="Biometric, password and device authentication with Chebyshev-polynomial key agreement",
)

app.command(name="eval")(eval_commands.evaluate)
app.command(name="attack")(attack_commands.attack)

CONFIG_OPTION = typer.Option(None, "--config", "-c", help="key=value config file")
VERBOSE_OPTION = typer.Option(False, "--verbose", "-v", help="Debug logging")
BIND_OPTION = typer.Option(None, "--bind", help="Server address host:port")
BIO_OPTION = typer.Option(..., "--bio", help="Biometric file (hex or raw, N bits)")
PASSWORD_OPTION = typer.Option(None, "--password", envvar="CBA_PASSWORD", help="Password")
CRED_OPTION = typer.Option(None, "--cred", help="Credential file")


@app.command()
def serve(
    config_path: Path = CONFIG_OPTION,
    store: Path = typer.Option(None, "--store", help="Enrollment store file"),
    bind: str = BIND_OPTION,
    trusted_channel: bool = typer.Option(
        False, "--trusted-channel", help="Accept enrollment requests on this listener"
    ),
    faithful_paper: bool = typer.Option(
        False, "--faithful-paper", help="Timestamp-only replay check (no duplicate-M1 cache)"
    ),
    lenient: bool = typer.Option(
        False, "--lenient", help="Keep the intact records of a damaged store instead of failing"
    ),
    verbose: bool = VERBOSE_OPTION,
):
    """
    Run the authentication server.

    Example:
        chebauth serve --store users.db --trusted-channel
    """
    settings = load_settings(
        config_path,
        verbose,
        store_path=store,
        bind=bind,
        trusted_channel=trusted_channel or None,
        faithful_paper=faithful_paper or None,
    )
    console.print("[bold blue]chebauth[/bold blue] - authentication server\n")

    with exit_on_error():
        db = FileStore(settings.store_path, settings.code, settings.prime, strict=not lenient)
        auth = AuthServer(db, settings.policy)
        mode = "faithful-paper" if settings.faithful_paper else "hardened"
        console.print(
            Panel(
                f"Store: {settings.store_path} ({len(db)} users)\n"
                f"Code: k={settings.code.k} r={settings.code.r} | Window: {settings.window_ms} ms\n"
                f"Replay mode: {mode} | Enrollment: "
                f"{'open' if settings.trusted_channel else 'refused'}",
                title=f"Listening on {settings.bind}",
                border_style="blue",
            )
        )
        try:
            asyncio.run(_serve_forever(settings, auth))
        except KeyboardInterrupt:
            console.print("\n[yellow]Stopped[/yellow]")


async def _serve_forever(settings: Config, auth: AuthServer) -> None:
    server = await transport.serve(
        settings.host, settings.port, auth, settings.code, settings.trusted_channel
    )
    async with server:
        await server.serve_forever()


@app.command()
def enroll(
    bio: Path = BIO_OPTION,
    password: str = PASSWORD_OPTION,
    config_path: Path = CONFIG_OPTION,
    cred: Path = CRED_OPTION,
    bind: str = BIND_OPTION,
    verbose: bool = VERBOSE_OPTION,
):
    """
    Enroll with a server started with --trusted-channel and save the credential.

    Example:
        chebauth enroll --bio alice.hex --cred alice.cbc
    """
    settings = load_settings(config_path, verbose, cred_path=cred, bind=bind)
    pw = password_bytes(password)

    with exit_on_error():
        b_t = read_bio(bio, settings.code)
        with console.status("[bold green]Enrolling..."):
            credential = asyncio.run(
                transport.enroll_remote(settings.host, settings.port, b_t, pw, settings.code)
            )
        save_credential(settings.cred_path, credential)

    console.print(f"[green]✓ Enrolled[/green] | Credential: {settings.cred_path}")


@app.command()
def auth(
    bio: Path = BIO_OPTION,
    password: str = PASSWORD_OPTION,
    config_path: Path = CONFIG_OPTION,
    cred: Path = CRED_OPTION,
    bind: str = BIND_OPTION,
    verbose: bool = VERBOSE_OPTION,
):
    """
    Authenticate and print the session-key fingerprint.

    Example:
        chebauth auth --bio alice-today.hex --cred alice.cbc
    """
    settings = load_settings(config_path, verbose, cred_path=cred, bind=bind)
    pw = password_bytes(password)

    with exit_on_error():
        credential = load_credential(settings.cred_path)
        b = read_bio(bio, credential.code)
        with console.status("[bold green]Authenticating..."):
            key = asyncio.run(
                transport.authenticate_remote(
                    settings.host,
                    settings.port,
                    credential,
                    b,
                    pw,
                    window_ms=settings.window_ms,
                )
            )

    console.print(f"[green]✓ Authenticated[/green] | Session key fingerprint: {key.fingerprint}")


@app.command()
def genbio(
    out: Path = typer.Option(..., "--out", "-o", help="Output file"),
    base: Path = typer.Option(None, "--from", help="Perturb this vector instead of drawing one"),
    noise: int = typer.Option(0, "--noise", help="Bit flips per r-bit block"),
    seed: int = typer.Option(None, "--seed", help="Seed for reproducible vectors"),
    raw: bool = typer.Option(False, "--raw", help="Write packed bytes instead of hex"),
    config_path: Path = CONFIG_OPTION,
):
    """
    Generate a synthetic biometric vector, or a noisy reading of an existing one.

    Example:
        chebauth genbio --out alice.hex --seed 1
        chebauth genbio --from alice.hex --noise 2 --out alice-today.hex
    """
    settings = load_settings(config_path)
    code = settings.code

    with exit_on_error():
        source = read_bio(base, code) if base else None
        vector = generate_vector(code, Random(seed), source, noise)
        write_bio(out, vector, raw=raw)

    console.print(f"[green]✓[/green] {code.n}-bit vector written to {out}")


@app.command()
def version():
    """Show version information."""
    from chebauth import __version__

    console.print(f"chebauth version {__version__}")


if __name__ == "__main__":
    app()
