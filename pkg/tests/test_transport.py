"""Tests for the asyncio TCP server and client helpers."""

import asyncio
import time
from random import Random

import pytest

from chebauth.crypto.chebyshev import DEFAULT_PRIME
from chebauth.crypto.fuzzy import apply_block_noise, random_vector
from chebauth.errors import ProtocolReject, RejectReason
from chebauth.models.messages import AuthChallenge, AuthConfirm, Failure
from chebauth.netio.codec import decode, encode
from chebauth.netio.transport import authenticate_remote, enroll_remote, now_ms, serve
from chebauth.protocol.client import auth_client_start
from chebauth.protocol.server import AuthServer, ServerPolicy
from chebauth.store.file import FileStore

HOST = "127.0.0.1"


async def _start(store_path, code, trusted_channel=True, window_ms=30_000, seed=5):
    auth = AuthServer(
        FileStore(store_path, code, DEFAULT_PRIME), ServerPolicy(window_ms=window_ms), Random(seed)
    )
    server = await serve(HOST, 0, auth, code, trusted_channel=trusted_channel)
    return server, server.sockets[0].getsockname()[1], auth


async def _stop(server):
    server.close()
    await server.wait_closed()


@pytest.fixture
async def live(store_path, code):
    server, port, auth = await _start(store_path, code)
    yield port, auth
    await _stop(server)


async def test_enroll_then_authenticate(live, code, rng):
    port, auth = live
    b_t = random_vector(code, rng)
    cred = await enroll_remote(HOST, port, b_t, b"pw", code, rng)
    assert len(auth.store) == 1

    key = await authenticate_remote(
        HOST, port, cred, apply_block_noise(b_t, code.t, code, rng), b"pw", rng
    )
    assert len(key.key) == 32
    assert len(key.fingerprint) == 8


async def test_rejections_reach_the_client(live, code, rng):
    port, _ = live
    b_t = random_vector(code, rng)
    cred = await enroll_remote(HOST, port, b_t, b"pw", code, rng)

    with pytest.raises(ProtocolReject) as exc:
        await authenticate_remote(HOST, port, cred, b_t, b"wrong", rng)
    assert exc.value.reason == RejectReason.REFUSED_BY_SERVER

    with pytest.raises(ProtocolReject) as exc:
        await authenticate_remote(HOST, port, cred, random_vector(code, rng), b"pw", rng)
    assert exc.value.reason == RejectReason.REFUSED_BY_SERVER


async def test_enrollment_refused_without_trusted_channel(store_path, code, rng):
    server, port, auth = await _start(store_path, code, trusted_channel=False)
    try:
        with pytest.raises(ProtocolReject) as exc:
            await enroll_remote(HOST, port, random_vector(code, rng), b"pw", code, rng)
        assert exc.value.reason == RejectReason.REFUSED_BY_SERVER
        assert len(auth.store) == 0
    finally:
        await _stop(server)


async def test_enrollments_survive_restarts(store_path, code, rng):
    users = []
    for restart in range(10):
        server, port, auth = await _start(store_path, code, seed=restart)
        try:
            assert len(auth.store) == len(users)
            for cred, b_t in users:
                key = await authenticate_remote(HOST, port, cred, b_t, b"pw", rng)
                assert len(key.key) == 32

            b_t = random_vector(code, rng)
            users.append((await enroll_remote(HOST, port, b_t, b"pw", code, rng), b_t))
        finally:
            await _stop(server)


async def test_interleaved_clients(live, code, rng):
    port, _ = live
    users = []
    for i in range(4):
        b_t = random_vector(code, rng)
        pw = f"pw-{i}".encode()
        users.append((await enroll_remote(HOST, port, b_t, pw, code, rng), b_t, pw))

    keys = await asyncio.gather(
        *(
            authenticate_remote(HOST, port, cred, b_t, pw, Random(100 + i))
            for i, (cred, b_t, pw) in enumerate(users)
        )
    )
    assert len({k.key for k in keys}) == len(users)


async def test_unexpected_first_message_gets_failure(live, code):
    port, _ = live
    reader, writer = await asyncio.open_connection(HOST, port)
    writer.write(encode(AuthConfirm(gamma=b"\x00" * 32, t3=1)))
    await writer.drain()
    reply = await asyncio.wait_for(reader.read(), 5)
    writer.close()
    await writer.wait_closed()
    assert decode(reply, code) == Failure()


async def test_garbage_header_closes_connection(live):
    port, _ = live
    reader, writer = await asyncio.open_connection(HOST, port)
    writer.write(b"\x00\x00\x00\x01\x63")
    await writer.drain()
    assert await asyncio.wait_for(reader.read(), 5) == b""
    writer.close()
    await writer.wait_closed()


async def test_idle_connection_times_out(store_path, code):
    server, port, _ = await _start(store_path, code, window_ms=100)
    try:
        reader, writer = await asyncio.open_connection(HOST, port)
        assert await asyncio.wait_for(reader.read(), 5) == b""
        writer.close()
        await writer.wait_closed()
    finally:
        await _stop(server)


async def test_deadline_covers_the_whole_connection(store_path, code, rng):
    # window 500 ms: the connection gets 1 s in total, however its reads are spaced
    server, port, _ = await _start(store_path, code, window_ms=500)
    try:
        b_t = random_vector(code, rng)
        cred = await enroll_remote(HOST, port, b_t, b"pw", code, rng)

        reader, writer = await asyncio.open_connection(HOST, port)
        opened = time.monotonic()
        await asyncio.sleep(0.7)
        request, _ = auth_client_start(cred, b_t, b"pw", now_ms(), rng, 500)
        writer.write(encode(request))
        await writer.drain()

        reply = await asyncio.wait_for(reader.read(), 5)
        elapsed = time.monotonic() - opened
        writer.close()
        await writer.wait_closed()
    finally:
        await _stop(server)

    assert isinstance(decode(reply, code), AuthChallenge)
    assert elapsed < 1.4
