"""Binary wire framing.

Frame: u32 body length | u8 type tag | body. Bodies are fixed-width field
sequences in protocol order; the width depends only on the type and the
code parameters (for the masked template fields).
"""

import asyncio
from typing import Literal

from pydantic import ValidationError

from chebauth.crypto.chebyshev import FIELD_BYTES, field_from_bytes, field_to_bytes
from chebauth.crypto.hashing import DIGEST_BYTES, TIMESTAMP_BYTES
from chebauth.errors import FramingError, ParameterError
from chebauth.models.biometric import BiometricVector
from chebauth.models.messages import (
    MESSAGE_TYPES,
    AuthChallenge,
    AuthConfirm,
    AuthRequest,
    EnrollRequest,
    EnrollResponse,
    Failure,
    WireMessage,
)
from chebauth.models.params import CodeParams

HEADER_BYTES = 5

FieldKind = Literal["digest", "field", "bio", "time"]

LAYOUTS: dict[int, list[tuple[str, FieldKind]]] = {
    EnrollRequest.TAG: [("bb_t", "bio"), ("tag", "digest")],
    EnrollResponse.TAG: [
        ("o1", "digest"),
        ("o2", "digest"),
        ("s", "field"),
        ("spub", "field"),
        ("p", "field"),
    ],
    AuthRequest.TAG: [
        ("o1", "digest"),
        ("o2", "digest"),
        ("bb", "bio"),
        ("m1", "field"),
        ("alpha", "digest"),
        ("t1", "time"),
    ],
    AuthChallenge.TAG: [("m3", "field"), ("beta", "digest"), ("t2", "time")],
    AuthConfirm.TAG: [("gamma", "digest"), ("t3", "time")],
    Failure.TAG: [],
}


def _width(kind: FieldKind, code: CodeParams) -> int:
    match kind:
        case "digest":
            return DIGEST_BYTES
        case "field":
            return FIELD_BYTES
        case "bio":
            return code.n_bytes
        case "time":
            return TIMESTAMP_BYTES


def body_size(tag: int, code: CodeParams) -> int:
    """Exact body length for a message type."""
    if tag not in LAYOUTS:
        raise FramingError(f"unknown message tag {tag}")
    return sum(_width(kind, code) for _, kind in LAYOUTS[tag])


def _pack_field(value: object, kind: FieldKind) -> bytes:
    match kind:
        case "digest":
            if len(value) != DIGEST_BYTES:
                raise FramingError(f"digest must be {DIGEST_BYTES} bytes")
            return value
        case "field":
            return field_to_bytes(value)
        case "bio":
            return value.bits
        case "time":
            return value.to_bytes(TIMESTAMP_BYTES, "big")


def _unpack_field(chunk: bytes, kind: FieldKind, code: CodeParams) -> object:
    match kind:
        case "digest":
            return chunk
        case "field":
            return field_from_bytes(chunk)
        case "bio":
            return BiometricVector(bits=chunk, n_bits=code.n)
        case "time":
            return int.from_bytes(chunk, "big")


def encode(msg: WireMessage) -> bytes:
    """Serialize a message into a length-prefixed frame."""
    try:
        body = b"".join(
            _pack_field(getattr(msg, name), kind) for name, kind in LAYOUTS[msg.TAG]
        )
    except (ParameterError, OverflowError) as e:
        raise FramingError(f"cannot encode {type(msg).__name__}: {e}") from e
    return len(body).to_bytes(4, "big") + msg.TAG.to_bytes(1, "big") + body


def parse_header(header: bytes, code: CodeParams) -> tuple[int, int]:
    """Validate a 5-byte header and return (tag, body length)."""
    if len(header) != HEADER_BYTES:
        raise FramingError("short frame header")
    length = int.from_bytes(header[:4], "big")
    tag = header[4]
    expected = body_size(tag, code)
    if length != expected:
        raise FramingError(f"tag {tag} body must be {expected} bytes, header says {length}")
    return tag, length


def decode_body(tag: int, body: bytes, code: CodeParams) -> WireMessage:
    if len(body) != body_size(tag, code):
        raise FramingError("body length does not match message type")

    values: dict[str, object] = {}
    pos = 0
    try:
        for name, kind in LAYOUTS[tag]:
            width = _width(kind, code)
            values[name] = _unpack_field(body[pos : pos + width], kind, code)
            pos += width
        return MESSAGE_TYPES[tag](**values)
    except (ParameterError, ValidationError) as e:
        raise FramingError(f"invalid {MESSAGE_TYPES[tag].__name__} body: {e}") from e


def decode(frame: bytes, code: CodeParams) -> WireMessage:
    """
    Parse a complete frame.

    Raises:
        FramingError: On short input, unknown tag or length mismatch
    """
    if len(frame) < HEADER_BYTES:
        raise FramingError("frame shorter than header")
    declared = int.from_bytes(frame[:4], "big")
    if declared != len(frame) - HEADER_BYTES:
        raise FramingError(f"declared length {declared} != actual {len(frame) - HEADER_BYTES}")
    tag, _ = parse_header(frame[:HEADER_BYTES], code)
    return decode_body(tag, frame[HEADER_BYTES:], code)


async def read_frame(reader: asyncio.StreamReader, code: CodeParams) -> WireMessage:
    """Read one frame; the header is validated before the body is read."""
    try:
        header = await reader.readexactly(HEADER_BYTES)
        tag, length = parse_header(header, code)
        body = await reader.readexactly(length)
    except asyncio.IncompleteReadError as e:
        raise FramingError("short read, connection closed") from e
    return decode_body(tag, body, code)


async def write_frame(writer: asyncio.StreamWriter, msg: WireMessage) -> None:
    writer.write(encode(msg))
    await writer.drain()
