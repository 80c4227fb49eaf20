"""Asyncio TCP server and client for enrollment and authentication."""

import asyncio
import logging
import secrets
import time
from collections.abc import Callable
from random import Random

from chebauth.errors import (
    ChebAuthError,
    FramingError,
    ParameterError,
    ProtocolReject,
    RejectReason,
    StoreError,
)
from chebauth.models.biometric import BiometricVector
from chebauth.models.messages import (
    AuthChallenge,
    AuthConfirm,
    AuthRequest,
    EnrollRequest,
    EnrollResponse,
    Failure,
)
from chebauth.models.params import CodeParams
from chebauth.models.records import ClientCredential
from chebauth.models.session import SessionKey
from chebauth.netio.codec import decode, read_frame, write_frame
from chebauth.protocol.client import (
    auth_client_finish,
    auth_client_start,
    credential_from_response,
    enroll_client,
)
from chebauth.protocol.server import AuthServer
from chebauth.protocol.sessions import DEFAULT_WINDOW_MS

logger = logging.getLogger(__name__)

DEFAULT_PORT = 7457

Clock = Callable[[], int]


def now_ms() -> int:
    return time.time_ns() // 1_000_000


class ProtocolServer:
    """Connection handler: each connection runs one enrollment or one authentication."""

    def __init__(
        self,
        auth: AuthServer,
        code: CodeParams,
        trusted_channel: bool = False,
        clock: Clock = now_ms,
    ):
        """
        Initialize the connection handler.

        Args:
            auth: Protocol state (store, sessions, policy)
            code: Code parameters, fixes the template field widths on the wire
            trusted_channel: Accept enrollment requests on this listener
            clock: Millisecond clock
        """
        self.auth = auth
        self.code = code
        self.trusted_channel = trusted_channel
        self.clock = clock

    @property
    def session_timeout(self) -> float:
        """Deadline for a whole connection in seconds, twice the freshness window."""
        return 2 * self.auth.policy.window_ms / 1000

    async def _serve_one(self, reader: asyncio.StreamReader, writer: asyncio.StreamWriter) -> None:
        first = await read_frame(reader, self.code)
        match first:
            case EnrollRequest():
                if not self.trusted_channel:
                    raise ProtocolReject(RejectReason.ENROLLMENT_REFUSED, "no trusted channel")
                await write_frame(writer, self.auth.enroll(first))
            case AuthRequest():
                challenge = self.auth.verify(first, self.clock())
                await write_frame(writer, challenge)
                confirm = await read_frame(reader, self.code)
                if not isinstance(confirm, AuthConfirm):
                    raise ProtocolReject(RejectReason.MALFORMED, "expected AuthConfirm")
                self.auth.finish(first.m1, confirm, self.clock())
            case _:
                raise ProtocolReject(RejectReason.MALFORMED, f"unexpected {type(first).__name__}")

    async def handle(self, reader: asyncio.StreamReader, writer: asyncio.StreamWriter) -> None:
        peer = writer.get_extra_info("peername")
        try:
            async with asyncio.timeout(self.session_timeout):
                await self._serve_one(reader, writer)
        except ProtocolReject as e:
            # AuthServer has already logged verify/finish rejects
            if e.reason in (RejectReason.MALFORMED, RejectReason.ENROLLMENT_REFUSED):
                logger.warning("Refused %s: %s", peer, e)
            await self._send_failure(writer)
        except (ParameterError, StoreError) as e:
            logger.error("Request from %s failed: %s", peer, e)
            await self._send_failure(writer)
        except FramingError as e:
            logger.warning("Framing error from %s, closing: %s", peer, e)
        except TimeoutError:
            logger.info("Connection %s past its deadline, closing", peer)
        except ConnectionError as e:
            logger.info("Connection %s lost: %s", peer, e)
        finally:
            writer.close()
            try:
                await writer.wait_closed()
            except ConnectionError:
                pass

    async def _send_failure(self, writer: asyncio.StreamWriter) -> None:
        try:
            await write_frame(writer, Failure())
        except ConnectionError:
            pass

    async def start(self, host: str, port: int) -> asyncio.Server:
        server = await asyncio.start_server(self.handle, host, port)
        for sock in server.sockets:
            logger.info("Listening on %s", sock.getsockname())
        return server


async def serve(
    host: str,
    port: int,
    auth: AuthServer,
    code: CodeParams,
    trusted_channel: bool = False,
    clock: Clock = now_ms,
) -> asyncio.Server:
    """Bind and start accepting connections. The caller owns the returned server."""
    return await ProtocolServer(auth, code, trusted_channel, clock).start(host, port)


async def _exchange(host: str, port: int, timeout: float):
    return await asyncio.wait_for(asyncio.open_connection(host, port), timeout)


async def enroll_remote(
    host: str,
    port: int,
    b_t: BiometricVector,
    pw: bytes,
    code: CodeParams,
    rng: Random | None = None,
    timeout: float = 30.0,
) -> ClientCredential:
    """
    Enroll over a connection the operator trusts.

    Raises:
        ProtocolReject: refused-by-server when the server answers Failure
        FramingError: On malformed replies
    """
    rng = rng or secrets.SystemRandom()
    request, (_, hd) = enroll_client(b_t, pw, code, rng)

    reader, writer = await _exchange(host, port, timeout)
    try:
        await write_frame(writer, request)
        reply = await asyncio.wait_for(read_frame(reader, code), timeout)
    finally:
        writer.close()
        await writer.wait_closed()

    if not isinstance(reply, EnrollResponse):
        raise ProtocolReject(RejectReason.REFUSED_BY_SERVER, "enrollment refused")
    return credential_from_response(reply, hd)


async def authenticate_remote(
    host: str,
    port: int,
    cred: ClientCredential,
    b: BiometricVector,
    pw: bytes,
    rng: Random | None = None,
    clock: Clock = now_ms,
    window_ms: int = DEFAULT_WINDOW_MS,
    timeout: float = 30.0,
) -> SessionKey:
    """
    Run the three-round authentication against a live server.

    The server signals acceptance of the final message by closing without
    sending anything, and rejection by a Failure frame.

    Raises:
        ProtocolReject: On any local or remote rejection
    """
    rng = rng or secrets.SystemRandom()
    request, state = auth_client_start(cred, b, pw, clock(), rng, window_ms)

    reader, writer = await _exchange(host, port, timeout)
    try:
        await write_frame(writer, request)
        reply = await asyncio.wait_for(read_frame(reader, cred.code), timeout)
        if not isinstance(reply, AuthChallenge):
            raise ProtocolReject(RejectReason.REFUSED_BY_SERVER)

        confirm, key = auth_client_finish(reply, state, clock())
        await write_frame(writer, confirm)

        tail = await asyncio.wait_for(reader.read(), timeout)
    finally:
        writer.close()
        try:
            await writer.wait_closed()
        except ConnectionError:
            pass

    if tail:
        try:
            verdict = decode(tail, cred.code)
        except ChebAuthError:
            verdict = None
        if not isinstance(verdict, Failure):
            raise ProtocolReject(RejectReason.MALFORMED, "unexpected trailing data")
        raise ProtocolReject(RejectReason.REFUSED_BY_SERVER, "confirmation rejected")
    return key
