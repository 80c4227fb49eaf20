"""Tests for wire framing."""

import asyncio

import pytest

from chebauth.crypto.fuzzy import random_vector
from chebauth.errors import FramingError
from chebauth.models.messages import (
    AuthChallenge,
    AuthConfirm,
    AuthRequest,
    EnrollRequest,
    EnrollResponse,
    Failure,
)
from chebauth.netio.codec import HEADER_BYTES, body_size, decode, encode, read_frame


@pytest.mark.parametrize(
    ("message_type", "size"),
    [
        (EnrollRequest, 112),
        (EnrollResponse, 160),
        (AuthRequest, 216),
        (AuthChallenge, 72),
        (AuthConfirm, 40),
        (Failure, 0),
    ],
)
def test_body_sizes(code, message_type, size):
    assert body_size(message_type.TAG, code) == size


def test_auth_request_frame(code, rng):
    msg = AuthRequest(
        o1=b"\x01" * 32,
        o2=b"\x02" * 32,
        bb=random_vector(code, rng),
        m1=12345,
        alpha=b"\x03" * 32,
        t1=1_700_000_000_000,
    )
    frame = encode(msg)
    assert frame[:4] == (216).to_bytes(4, "big")
    assert frame[4] == 3
    assert frame[HEADER_BYTES : HEADER_BYTES + 32] == b"\x01" * 32
    assert frame[-8:] == (1_700_000_000_000).to_bytes(8, "big")
    assert decode(frame, code) == msg


def test_failure_frame_is_bare_header(code):
    assert encode(Failure()) == b"\x00\x00\x00\x00\x06"
    assert decode(b"\x00\x00\x00\x00\x06", code) == Failure()


def test_decode_errors(code):
    frame = encode(AuthConfirm(gamma=b"\x00" * 32, t3=5))
    with pytest.raises(FramingError):
        decode(frame[:-1], code)
    with pytest.raises(FramingError):
        decode(frame + b"\x00", code)
    with pytest.raises(FramingError):
        decode(frame[:3], code)
    with pytest.raises(FramingError):
        decode(frame[:4] + b"\x09" + frame[5:], code)
    # Valid length for a different type
    with pytest.raises(FramingError):
        decode(frame[:4] + b"\x04" + frame[5:], code)


def test_encode_rejects_bad_fields():
    with pytest.raises(FramingError):
        encode(AuthConfirm(gamma=b"\x00" * 31, t3=5))
    with pytest.raises(FramingError):
        encode(AuthChallenge(m3=1 << 256, beta=b"\x00" * 32, t2=1))


def test_template_width_follows_code(small_code, rng):
    msg = EnrollRequest(bb_t=random_vector(small_code, rng), tag=b"\x00" * 32)
    frame = encode(msg)
    assert len(frame) == HEADER_BYTES + small_code.n_bytes + 32
    assert decode(frame, small_code) == msg


async def test_read_frame(code):
    frame = encode(AuthChallenge(m3=7, beta=b"\x05" * 32, t2=9))
    reader = asyncio.StreamReader()
    reader.feed_data(frame + frame[:10])
    reader.feed_eof()

    assert await read_frame(reader, code) == AuthChallenge(m3=7, beta=b"\x05" * 32, t2=9)
    with pytest.raises(FramingError):
        await read_frame(reader, code)


async def test_read_frame_rejects_header_before_body(code):
    reader = asyncio.StreamReader()
    reader.feed_data((10_000_000).to_bytes(4, "big") + b"\x03")
    with pytest.raises(FramingError):
        await read_frame(reader, code)
