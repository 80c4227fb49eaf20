"""Client credential file: "CBC1" | version | o1 | o2 | s | spub | p | helper data."""

import os
from pathlib import Path

from pydantic import ValidationError

from chebauth.crypto.chebyshev import FIELD_BYTES, field_from_bytes, field_to_bytes
from chebauth.errors import ParameterError, StoreError, StoreIntegrityError
from chebauth.models.biometric import HelperData
from chebauth.models.params import ChebParams
from chebauth.models.records import ClientCredential

MAGIC = b"CBC1"
VERSION = 1
_FIXED = len(MAGIC) + 1 + 5 * FIELD_BYTES


def encode_credential(cred: ClientCredential) -> bytes:
    return (
        MAGIC
        + VERSION.to_bytes(1, "big")
        + cred.o1
        + cred.o2
        + field_to_bytes(cred.s)
        + field_to_bytes(cred.spub)
        + field_to_bytes(cred.p)
        + cred.hd.to_bytes()
    )


def decode_credential(data: bytes) -> ClientCredential:
    if data[: len(MAGIC)] != MAGIC:
        raise StoreIntegrityError(0, "bad magic, not a chebauth credential")
    if len(data) < _FIXED or data[len(MAGIC)] != VERSION:
        raise StoreIntegrityError(len(MAGIC), "unsupported version or truncated credential")

    fields = [
        data[5 + i * FIELD_BYTES : 5 + (i + 1) * FIELD_BYTES] for i in range(5)
    ]
    s, spub, p = (field_from_bytes(f) for f in fields[2:])
    try:
        ChebParams(p=p, s=s, spub=spub)
    except ParameterError as e:
        raise StoreIntegrityError(5 + 2 * FIELD_BYTES, f"invalid public parameters: {e}") from e

    try:
        return ClientCredential(
            o1=fields[0],
            o2=fields[1],
            s=s,
            spub=spub,
            p=p,
            hd=HelperData.from_bytes(data[_FIXED:]),
        )
    except (ParameterError, ValidationError) as e:
        raise StoreIntegrityError(_FIXED, f"invalid credential: {e}") from e


def save_credential(path: Path, cred: ClientCredential) -> None:
    """Write the credential atomically (temp file + rename)."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_suffix(path.suffix + ".tmp")
    with open(tmp, "wb") as f:
        f.write(encode_credential(cred))
        f.flush()
        os.fsync(f.fileno())
    os.replace(tmp, path)


def load_credential(path: Path) -> ClientCredential:
    try:
        data = Path(path).read_bytes()
    except OSError as e:
        raise StoreError(f"cannot read credential {path}: {e}") from e
    return decode_credential(data)
