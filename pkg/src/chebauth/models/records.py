"""Server-side enrollment records and client-side credentials."""

from pydantic import BaseModel, ConfigDict, Field, model_validator

from chebauth.crypto.chebyshev import MIN_DEGREE
from chebauth.crypto.hashing import DIGEST_BYTES, h
from chebauth.errors import ParameterError
from chebauth.models.biometric import BiometricVector, HelperData
from chebauth.models.params import ChebParams, CodeParams

ID_BYTES = 16


class EnrollmentRecord(BaseModel):
    """What the server keeps per user: ID, masked template, trapdoor and base point."""

    model_config = ConfigDict(frozen=True)

    id: bytes = Field(..., description="Random 16-byte user identity, never sent on the wire")
    bb_t: BiometricVector = Field(..., description="Masked template B_T XOR mask(K_T)")
    x_s: int = Field(..., description="Server secret degree")
    s: int = Field(..., description="Base point")
    o1: bytes = Field(..., description="Lookup digest h(BB_T || ID)")

    @model_validator(mode="after")
    def _check_digest(self) -> "EnrollmentRecord":
        if len(self.id) != ID_BYTES:
            raise ParameterError(f"id must be {ID_BYTES} bytes")
        if self.x_s < MIN_DEGREE:
            raise ParameterError("x_s must be >= 2")
        if self.o1 != h(self.bb_t.bits, self.id):
            raise ParameterError("o1 does not match h(bb_t || id)")
        return self


class ClientCredential(BaseModel):
    """What the device keeps after enrollment."""

    model_config = ConfigDict(frozen=True)

    o1: bytes = Field(..., description="h(BB_T || ID)")
    o2: bytes = Field(..., description="h(K_T || PW_T) XOR h(X_S)")
    s: int = Field(..., description="Base point")
    spub: int = Field(..., description="Server public value")
    p: int = Field(..., description="Prime modulus")
    hd: HelperData = Field(..., description="Fuzzy extractor helper data")

    @model_validator(mode="after")
    def _check_fields(self) -> "ClientCredential":
        if len(self.o1) != DIGEST_BYTES or len(self.o2) != DIGEST_BYTES:
            raise ParameterError("o1 and o2 must be 32 bytes")
        return self

    @property
    def code(self) -> CodeParams:
        return self.hd.code

    @property
    def params(self) -> ChebParams:
        """Arithmetic context; raises ParameterError if the stored values are inconsistent."""
        return ChebParams(p=self.p, s=self.s, spub=self.spub)
