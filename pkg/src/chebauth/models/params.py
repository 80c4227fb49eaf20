"""Arithmetic and code parameter models."""

from pydantic import BaseModel, ConfigDict, Field, model_validator

from chebauth.crypto.chebyshev import is_valid_modulus
from chebauth.errors import ParameterError

MAX_CODE_BITS = 65_535


class ChebParams(BaseModel):
    """Public arithmetic context for one enrolled user."""

    model_config = ConfigDict(frozen=True)

    p: int = Field(..., description="Prime modulus")
    s: int = Field(..., description="Per-user base point in [0, p)")
    spub: int = Field(..., description="Server public value T_{x_s}(s) mod p")

    @model_validator(mode="after")
    def _check_range(self) -> "ChebParams":
        if not is_valid_modulus(self.p):
            raise ParameterError("p must be a prime > 3")
        if not (0 <= self.s < self.p and 0 <= self.spub < self.p):
            raise ParameterError("s and spub must lie in [0, p)")
        return self


class CodeParams(BaseModel):
    """Repetition code shape: k message bits, each repeated r times."""

    model_config = ConfigDict(frozen=True)

    k: int = Field(default=128, description="Message length in bits")
    r: int = Field(default=5, description="Repetition factor (odd, >= 3)")

    @model_validator(mode="after")
    def _check_shape(self) -> "CodeParams":
        if self.k < 1:
            raise ParameterError(f"k must be positive, got {self.k}")
        if self.r < 3 or self.r % 2 == 0:
            raise ParameterError(f"r must be odd and >= 3, got {self.r}")
        if self.k * self.r > MAX_CODE_BITS:
            raise ParameterError(f"k*r must not exceed {MAX_CODE_BITS}")
        return self

    @property
    def n(self) -> int:
        """Codeword / biometric length in bits."""
        return self.k * self.r

    @property
    def t(self) -> int:
        """Correctable flips per r-bit block."""
        return (self.r - 1) // 2

    @property
    def n_bytes(self) -> int:
        return (self.n + 7) // 8
