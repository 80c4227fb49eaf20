"""Protocol messages exchanged between client and server."""

from typing import ClassVar

from pydantic import BaseModel, ConfigDict, Field

from chebauth.models.biometric import BiometricVector


class EnrollRequest(BaseModel):
    """Client -> server: masked template and password-bound tag."""

    model_config = ConfigDict(frozen=True)
    TAG: ClassVar[int] = 1

    bb_t: BiometricVector = Field(..., description="B_T XOR mask(K_T)")
    tag: bytes = Field(..., description="h(K_T || PW_T)")


class EnrollResponse(BaseModel):
    """Server -> client: the credential package (O1, O2, s, SPUB, p)."""

    model_config = ConfigDict(frozen=True)
    TAG: ClassVar[int] = 2

    o1: bytes = Field(..., description="h(BB_T || ID)")
    o2: bytes = Field(..., description="tag XOR h(X_S)")
    s: int = Field(..., description="Base point")
    spub: int = Field(..., description="T_{X_S}(s) mod p")
    p: int = Field(..., description="Prime modulus")


class AuthRequest(BaseModel):
    """First authentication message (O1, O2, BB, M1, alpha, t1)."""

    model_config = ConfigDict(frozen=True)
    TAG: ClassVar[int] = 3

    o1: bytes = Field(..., description="Lookup digest")
    o2: bytes = Field(..., description="Stored O2")
    bb: BiometricVector = Field(..., description="Masked reconstructed template")
    m1: int = Field(..., description="T_{R_C}(s)")
    alpha: bytes = Field(..., description="h(K || PW) XOR h(M1 || M2 || t1)")
    t1: int = Field(..., description="Client timestamp, ms")


class AuthChallenge(BaseModel):
    """Server -> client: (M3, beta, t2)."""

    model_config = ConfigDict(frozen=True)
    TAG: ClassVar[int] = 4

    m3: int = Field(..., description="T_{R_S}(s)")
    beta: bytes = Field(..., description="h(M2' || M3 || t2)")
    t2: int = Field(..., description="Server timestamp, ms")


class AuthConfirm(BaseModel):
    """Client -> server: (gamma, t3)."""

    model_config = ConfigDict(frozen=True)
    TAG: ClassVar[int] = 5

    gamma: bytes = Field(..., description="h(M2 || M4 || t3)")
    t3: int = Field(..., description="Client timestamp, ms")


class Failure(BaseModel):
    """Uniform rejection. Carries no reason."""

    model_config = ConfigDict(frozen=True)
    TAG: ClassVar[int] = 6


WireMessage = EnrollRequest | EnrollResponse | AuthRequest | AuthChallenge | AuthConfirm | Failure

MESSAGE_TYPES: dict[int, type[BaseModel]] = {
    cls.TAG: cls
    for cls in (EnrollRequest, EnrollResponse, AuthRequest, AuthChallenge, AuthConfirm, Failure)
}
