"""Hash, XOR and fixed-width serialization helpers shared by the protocol."""

import hashlib
import hmac

from chebauth.crypto.chebyshev import field_to_bytes
from chebauth.errors import ParameterError

DIGEST_BYTES = 32
TIMESTAMP_BYTES = 8


def h(*parts: bytes) -> bytes:
    """SHA-256 over the concatenation of parts."""
    digest = hashlib.sha256()
    for part in parts:
        digest.update(part)
    return digest.digest()


def xor_bytes(a: bytes, b: bytes) -> bytes:
    if len(a) != len(b):
        raise ParameterError(f"XOR operands differ in length ({len(a)} != {len(b)})")
    return bytes(x ^ y for x, y in zip(a, b, strict=True))


def ser_time(t_ms: int) -> bytes:
    """Serialize a millisecond timestamp as 8 big-endian bytes."""
    return t_ms.to_bytes(TIMESTAMP_BYTES, "big")


def h_fields(*values: int, t_ms: int) -> bytes:
    """h(ser(v1) || ser(v2) || ... || ser(t)) over 32-byte field elements and a timestamp."""
    return h(*(field_to_bytes(v) for v in values), ser_time(t_ms))


def digest_equal(a: bytes, b: bytes) -> bool:
    return hmac.compare_digest(a, b)
