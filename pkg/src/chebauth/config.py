"""Operator configuration: a flat key=value file plus command-line overrides."""

from pathlib import Path
from typing import Any

from dotenv import dotenv_values
from pydantic import BaseModel, Field, ValidationError, field_validator, model_validator

from chebauth.crypto.chebyshev import DEFAULT_PRIME, is_valid_modulus
from chebauth.errors import ConfigError, ParameterError
from chebauth.models.params import CodeParams
from chebauth.netio.transport import DEFAULT_PORT
from chebauth.protocol.server import ServerPolicy
from chebauth.protocol.sessions import DEFAULT_WINDOW_MS

MIN_PRIME_BITS = 128
MAX_PRIME_BITS = 256


class Config(BaseModel):
    """Settings shared by every command."""

    p: str = Field(default=f"{DEFAULT_PRIME:x}", description="Prime modulus, lowercase hex")
    k: int = Field(default=128, description="Code message length in bits")
    r: int = Field(default=5, description="Code repetition factor")
    window_ms: int = Field(default=DEFAULT_WINDOW_MS, description="Freshness window in ms")
    bind: str = Field(default=f"127.0.0.1:{DEFAULT_PORT}", description="host:port")
    store_path: Path = Field(default=Path("chebauth.db"), description="Server enrollment store")
    cred_path: Path = Field(default=Path("credential.cbc"), description="Client credential file")
    faithful_paper: bool = Field(
        default=False, description="Timestamp check only, no duplicate-M1 cache"
    )
    trusted_channel: bool = Field(
        default=False, description="Operator vouches for the enrollment link"
    )

    @field_validator("p")
    @classmethod
    def _check_prime(cls, value: str) -> str:
        try:
            p = int(value.lower().removeprefix("0x"), 16)
        except ValueError as e:
            raise ValueError(f"p is not a hex integer: {value!r}") from e
        if not MIN_PRIME_BITS <= p.bit_length() <= MAX_PRIME_BITS:
            raise ValueError(f"p must have {MIN_PRIME_BITS}..{MAX_PRIME_BITS} bits")
        if not is_valid_modulus(p):
            raise ValueError("p is not prime")
        return f"{p:x}"

    @field_validator("window_ms")
    @classmethod
    def _check_window(cls, value: int) -> int:
        if value <= 0:
            raise ValueError("window_ms must be positive")
        return value

    @model_validator(mode="after")
    def _check_code(self) -> "Config":
        try:
            CodeParams(k=self.k, r=self.r)
        except ParameterError as e:
            raise ValueError(str(e)) from e
        return self

    @property
    def prime(self) -> int:
        return int(self.p, 16)

    @property
    def code(self) -> CodeParams:
        return CodeParams(k=self.k, r=self.r)

    @property
    def host(self) -> str:
        return self.bind.rsplit(":", 1)[0]

    @property
    def port(self) -> int:
        _, _, port = self.bind.rpartition(":")
        return int(port) if port.isdigit() else DEFAULT_PORT

    @property
    def policy(self) -> ServerPolicy:
        return ServerPolicy(
            p=self.prime, window_ms=self.window_ms, hardened=not self.faithful_paper
        )


def load_config(path: Path | None = None, **overrides: Any) -> Config:
    """
    Build a Config from an optional key=value file and explicit overrides.

    Keys are case-insensitive; ``None`` overrides are ignored.

    Raises:
        ConfigError: If the file is missing or any value is invalid
    """
    values: dict[str, Any] = {}
    if path is not None:
        if not Path(path).is_file():
            raise ConfigError(f"config file not found: {path}")
        values = {
            key.lower(): value
            for key, value in dotenv_values(path).items()
            if value is not None
        }
        unknown = set(values) - set(Config.model_fields)
        if unknown:
            raise ConfigError(f"unknown config keys: {', '.join(sorted(unknown))}")

    values.update({key: value for key, value in overrides.items() if value is not None})
    try:
        return Config(**values)
    except ValidationError as e:
        raise ConfigError(str(e)) from e
