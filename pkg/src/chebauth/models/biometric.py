"""Biometric vector and helper data models."""

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from chebauth.errors import ParameterError
from chebauth.models.params import CodeParams

SEED_BYTES = 32


def _pack(bits: np.ndarray) -> bytes:
    return np.packbits(bits.astype(np.uint8)).tobytes()


def _unpack(data: bytes, n_bits: int) -> np.ndarray:
    return np.unpackbits(np.frombuffer(data, dtype=np.uint8))[:n_bits]


def _check_packed(data: bytes, n_bits: int) -> None:
    if len(data) != (n_bits + 7) // 8:
        raise ParameterError(f"{len(data)} bytes cannot hold exactly {n_bits} bits")
    if n_bits % 8 and data[-1] & (0xFF >> (n_bits % 8)):
        raise ParameterError("padding bits must be zero")


class BiometricVector(BaseModel):
    """Fixed-length bit vector, packed MSB-first."""

    model_config = ConfigDict(frozen=True)

    bits: bytes = Field(..., description="Packed bits, zero padded to a whole byte")
    n_bits: int = Field(..., description="Vector length in bits")

    @model_validator(mode="after")
    def _check_packing(self) -> "BiometricVector":
        _check_packed(self.bits, self.n_bits)
        return self

    @classmethod
    def from_array(cls, bits: np.ndarray) -> "BiometricVector":
        return cls(bits=_pack(bits), n_bits=len(bits))

    @classmethod
    def from_hex(cls, text: str, n_bits: int) -> "BiometricVector":
        try:
            data = bytes.fromhex(text.strip())
        except ValueError as e:
            raise ParameterError(f"invalid hex biometric: {e}") from e
        return cls(bits=data, n_bits=n_bits)

    @classmethod
    def from_bitstring(cls, text: str) -> "BiometricVector":
        """Build from a literal such as ``"110100"``."""
        return cls.from_array(np.array([int(c) for c in text], dtype=np.uint8))

    def array(self) -> np.ndarray:
        """Unpacked 0/1 uint8 array of length n_bits."""
        return _unpack(self.bits, self.n_bits)

    def to_hex(self) -> str:
        return self.bits.hex()

    def to_bitstring(self) -> str:
        return "".join(str(b) for b in self.array())

    def __len__(self) -> int:
        return self.n_bits


class HelperData(BaseModel):
    """Public sketch and extractor seed produced at enrollment."""

    model_config = ConfigDict(frozen=True)

    sketch: BiometricVector = Field(..., description="w XOR C(m)")
    seed: bytes = Field(..., description="Extractor seed")
    code: CodeParams = Field(..., description="Code the sketch was built with")

    @model_validator(mode="after")
    def _check_sizes(self) -> "HelperData":
        if self.sketch.n_bits != self.code.n:
            raise ParameterError("sketch length must equal N")
        if len(self.seed) != SEED_BYTES:
            raise ParameterError(f"seed must be {SEED_BYTES} bytes")
        return self

    def to_bytes(self) -> bytes:
        """u16 k, u8 r, packed sketch, 32-byte seed."""
        return (
            self.code.k.to_bytes(2, "big")
            + self.code.r.to_bytes(1, "big")
            + self.sketch.bits
            + self.seed
        )

    @classmethod
    def from_bytes(cls, data: bytes) -> "HelperData":
        if len(data) < 3:
            raise ParameterError("helper data too short")
        code = CodeParams(k=int.from_bytes(data[0:2], "big"), r=data[2])
        end = 3 + code.n_bytes
        if len(data) != end + SEED_BYTES:
            raise ParameterError(f"helper data must be {end + SEED_BYTES} bytes")
        return cls(
            sketch=BiometricVector(bits=data[3:end], n_bits=code.n),
            seed=data[end:],
            code=code,
        )
