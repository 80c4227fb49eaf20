"""In-process adversarial channel between an honest client and server.

Every frame crosses the adversary, which may pass, drop, replay a
previously recorded frame, tamper one body byte, or hold the message while
the clock advances. Runs are deterministic for a given script and seed.
"""

import logging
from random import Random
from typing import Literal

from pydantic import BaseModel, ConfigDict

from chebauth.crypto.chebyshev import field_to_bytes
from chebauth.crypto.fuzzy import apply_block_noise, random_vector
from chebauth.errors import FramingError, ParameterError, ProtocolReject, RejectReason
from chebauth.models.attack import (
    ActionKind,
    AdversaryScript,
    AttackOutcome,
    Direction,
    OutcomeStatus,
    TranscriptEntry,
)
from chebauth.models.biometric import BiometricVector
from chebauth.models.messages import (
    MESSAGE_TYPES,
    AuthChallenge,
    AuthConfirm,
    AuthRequest,
    EnrollRequest,
    EnrollResponse,
    WireMessage,
)
from chebauth.models.params import CodeParams
from chebauth.models.records import ClientCredential
from chebauth.netio.codec import HEADER_BYTES, decode, encode
from chebauth.protocol.client import (
    auth_client_finish,
    auth_client_start,
    credential_from_response,
    enroll_client,
)
from chebauth.protocol.server import AuthServer, ServerPolicy
from chebauth.store.memory import MemoryStore

logger = logging.getLogger(__name__)

EPOCH_MS = 1_700_000_000_000


class VirtualClock:
    """Millisecond clock that only moves when told to."""

    def __init__(self, start_ms: int = EPOCH_MS):
        self.now = start_ms

    def __call__(self) -> int:
        return self.now

    def advance(self, ms: int) -> None:
        self.now += ms


class Enrollment(BaseModel):
    """Harness-side view of one enrolled user, secrets included."""

    model_config = ConfigDict(frozen=True)

    credential: ClientCredential
    b_t: BiometricVector
    pw: bytes
    key: bytes
    user_id: bytes
    x_s: int


class _Stop(Exception):
    def __init__(self, outcome: AttackOutcome):
        self.outcome = outcome


class AttackHarness:
    """Honest client and server wired through a scripted adversary."""

    def __init__(
        self,
        code: CodeParams,
        policy: ServerPolicy | None = None,
        rng: Random | None = None,
        clock: VirtualClock | None = None,
    ):
        self.code = code
        self.policy = policy or ServerPolicy()
        self.rng = rng or Random(0)
        self.clock = clock or VirtualClock()
        self.server = AuthServer(MemoryStore(), self.policy, self.rng)

        self.recorded: list[bytes] = []
        self.transcript: list[TranscriptEntry] = []
        # Per-session secrets that must never appear on the wire
        self.session_secrets: list[bytes] = []

    # ----- channel -----

    def _intercept(
        self, frame: bytes, direction: Direction, script: AdversaryScript, position: int
    ) -> bytes | None:
        action = script.action_for(position)
        index = len(self.recorded)
        self.recorded.append(frame)

        delivered: bytes | None = frame
        match action.kind:
            case ActionKind.DROP:
                delivered = None
            case ActionKind.REPLAY:
                if action.index >= index:
                    raise ParameterError(f"replay index {action.index} not recorded yet")
                delivered = self.recorded[action.index]
            case ActionKind.TAMPER:
                body_len = len(frame) - HEADER_BYTES
                if body_len > 0:
                    pos = HEADER_BYTES + action.offset % body_len
                    mutable = bytearray(frame)
                    mutable[pos] ^= action.mask
                    delivered = bytes(mutable)
            case ActionKind.DELAY:
                self.clock.advance(action.delay_ms)
            case ActionKind.PASS:
                pass

        self.transcript.append(
            TranscriptEntry(
                index=index,
                direction=direction,
                message_type=MESSAGE_TYPES[frame[4]].__name__,
                action=action.kind,
                original=frame,
                delivered=delivered,
            )
        )
        return delivered

    def _deliver(
        self,
        msg: WireMessage,
        direction: Direction,
        script: AdversaryScript,
        position: int,
        expect: type,
    ) -> WireMessage:
        frame = self._intercept(encode(msg), direction, script, position)
        receiver = "server" if direction == "c2s" else "client"
        if frame is None:
            raise _Stop(self._outcome(OutcomeStatus.ABORTED))
        try:
            received = decode(frame, self.code)
        except FramingError:
            raise _Stop(self._reject(receiver, RejectReason.MALFORMED)) from None
        if not isinstance(received, expect):
            raise _Stop(self._reject(receiver, RejectReason.MALFORMED))
        return received

    def _outcome(self, status: OutcomeStatus, **fields) -> AttackOutcome:
        return AttackOutcome(status=status, transcript=list(self.transcript), **fields)

    def _reject(
        self, side: Literal["client", "server"], reason: RejectReason, **fields
    ) -> AttackOutcome:
        return self._outcome(OutcomeStatus.REJECTED, rejected_by=side, reason=reason, **fields)

    def last_index(self, message_type: type) -> int:
        """Recording index of the most recent frame of a given message type."""
        for entry in reversed(self.transcript):
            if entry.message_type == message_type.__name__:
                return entry.index
        raise LookupError(f"no {message_type.__name__} recorded")

    # ----- phases -----

    def enroll(
        self, b_t: BiometricVector, pw: bytes, script: AdversaryScript | None = None
    ) -> Enrollment | AttackOutcome:
        """Run enrollment through the adversary. Returns an outcome if it did not complete."""
        script = script or AdversaryScript()
        request, (key, hd) = enroll_client(b_t, pw, self.code, self.rng)
        try:
            received = self._deliver(request, "c2s", script, 0, EnrollRequest)
            try:
                response = self.server.enroll(received)
            except (ProtocolReject, ParameterError):
                return self._reject("server", RejectReason.MALFORMED)
            record = self.server.store.get(response.o1)
            reply = self._deliver(response, "s2c", script, 1, EnrollResponse)
        except _Stop as stop:
            return stop.outcome

        self.session_secrets += [b_t.bits, key, record.id, field_to_bytes(record.x_s)]
        return Enrollment(
            credential=credential_from_response(reply, hd),
            b_t=b_t,
            pw=pw,
            key=key,
            user_id=record.id,
            x_s=record.x_s,
        )

    def authenticate(
        self,
        cred: ClientCredential,
        b: BiometricVector,
        pw: bytes,
        script: AdversaryScript | None = None,
    ) -> AttackOutcome:
        """Run the three authentication rounds through the adversary."""
        script = script or AdversaryScript()
        window = self.policy.window_ms
        challenged = False

        try:
            try:
                request, state = auth_client_start(cred, b, pw, self.clock(), self.rng, window)
            except ParameterError:
                return self._reject("client", RejectReason.MALFORMED)
            self.session_secrets.append(field_to_bytes(state.r_c))

            received = self._deliver(request, "c2s", script, 0, AuthRequest)
            try:
                challenge = self.server.verify(received, self.clock())
            except ProtocolReject as e:
                return self._reject("server", e.reason)
            challenged = True
            self.session_secrets.append(field_to_bytes(self.server.sessions.peek(received.m1).r_s))

            reply = self._deliver(challenge, "s2c", script, 1, AuthChallenge)
            try:
                confirm, client_key = auth_client_finish(reply, state, self.clock())
            except ProtocolReject as e:
                return self._reject("client", e.reason, server_challenged=challenged)

            final = self._deliver(confirm, "c2s", script, 2, AuthConfirm)
            try:
                server_key = self.server.finish(received.m1, final, self.clock())
            except ProtocolReject as e:
                return self._reject("server", e.reason, server_challenged=challenged)
        except _Stop as stop:
            return stop.outcome.model_copy(update={"server_challenged": challenged})

        return self._outcome(
            OutcomeStatus.COMPLETED,
            server_challenged=True,
            keys_match=client_key == server_key,
        )

    # ----- leak checks -----

    def frames(self) -> list[bytes]:
        """Every frame that crossed the wire, as sent and as delivered."""
        out: list[bytes] = []
        for entry in self.transcript:
            out.append(entry.original)
            if entry.delivered is not None and entry.delivered != entry.original:
                out.append(entry.delivered)
        return out

    def leaks(self, needles: list[bytes] | None = None) -> list[bytes]:
        """Secrets (default: all captured) that appear as substrings of any frame."""
        needles = self.session_secrets if needles is None else needles
        frames = self.frames()
        return [n for n in needles if any(n in frame for frame in frames)]


def run_attack(
    script: AdversaryScript,
    scenario: Literal["enroll", "auth"],
    code: CodeParams,
    policy: ServerPolicy | None = None,
    seed: int = 0,
    noise: int | None = None,
) -> AttackOutcome:
    """
    Place the adversary on one phase of an otherwise honest enrollment + authentication.

    Args:
        script: Actions for the attacked phase
        scenario: Which phase the script applies to
        code: Code parameters
        policy: Server policy
        seed: Seed for every random choice in the run
        noise: Genuine flips per block on the authentication sample (default t)

    Returns:
        Outcome of the authentication (or of the enrollment if it did not complete),
        with the full transcript
    """
    rng = Random(seed)
    harness = AttackHarness(code, policy, rng)
    b_t = random_vector(code, rng)
    pw = rng.randbytes(12).hex().encode()

    enrolled = harness.enroll(b_t, pw, script if scenario == "enroll" else None)
    if isinstance(enrolled, AttackOutcome):
        return enrolled

    sample = apply_block_noise(b_t, code.t if noise is None else noise, code, rng)
    outcome = harness.authenticate(
        enrolled.credential, sample, pw, script if scenario == "auth" else None
    )
    logger.debug(
        "Attack run (%s, seed=%d): %s %s", scenario, seed, outcome.status.value, outcome.reason
    )
    return outcome
