"""Per-session state kept between protocol messages."""

from pydantic import BaseModel, ConfigDict, Field

from chebauth.crypto.hashing import h


class SessionKey(BaseModel):
    """Agreed 32-byte key, H("SK" || M4)."""

    model_config = ConfigDict(frozen=True)

    key: bytes = Field(..., description="32-byte session key")

    @property
    def fingerprint(self) -> str:
        """First 8 hex chars of H(key), for comparing two ends by eye."""
        return h(self.key).hex()[:8]


class ClientState(BaseModel):
    """Client memory between AuthRequest and AuthChallenge."""

    model_config = ConfigDict(frozen=True)

    p: int = Field(..., description="Prime modulus")
    r_c: int = Field(..., description="Client secret degree")
    m2: int = Field(..., description="T_{R_C}(SPUB)")
    window_ms: int = Field(..., description="Freshness window")


class PendingSession(BaseModel):
    """Server memory between AuthChallenge and AuthConfirm, keyed by M1."""

    model_config = ConfigDict(frozen=True)

    m1: int = Field(..., description="Client's M1, the table key")
    m2_prime: int = Field(..., description="T_{X_S}(M1)")
    r_s: int = Field(..., description="Server secret degree for this session")
    m3: int = Field(..., description="T_{R_S}(s)")
    created_at: int = Field(..., description="Creation time, ms")
