"""Server side of enrollment and authentication."""

import logging
import secrets
from random import Random

from pydantic import BaseModel, Field

from chebauth.crypto.chebyshev import (
    DEFAULT_PRIME,
    cheb_eval,
    field_to_bytes,
    random_degree,
    server_keygen,
)
from chebauth.crypto.hashing import DIGEST_BYTES, digest_equal, h, h_fields, xor_bytes
from chebauth.errors import ProtocolReject, RejectReason
from chebauth.models.messages import (
    AuthChallenge,
    AuthConfirm,
    AuthRequest,
    EnrollRequest,
    EnrollResponse,
)
from chebauth.models.records import ID_BYTES, EnrollmentRecord
from chebauth.models.session import PendingSession, SessionKey
from chebauth.protocol.sessions import (
    DEFAULT_WINDOW_MS,
    SessionTable,
    check_fresh,
    derive_session_key,
)
from chebauth.store.base import BaseStore

logger = logging.getLogger(__name__)


class ServerPolicy(BaseModel):
    """Server-wide protocol settings."""

    p: int = Field(default=DEFAULT_PRIME, description="Prime modulus")
    window_ms: int = Field(default=DEFAULT_WINDOW_MS, description="Freshness window")
    hardened: bool = Field(default=True, description="Reject duplicate M1 within the window")


def _h_secret(x_s: int) -> bytes:
    return h(field_to_bytes(x_s))


def enroll_server(req: EnrollRequest, p: int, rng: Random, store: BaseStore) -> EnrollResponse:
    """
    Register a user: pick (s, X_S), create ID, persist the record, answer with the package.

    Nothing is persisted if the store write fails.
    """
    if len(req.tag) != DIGEST_BYTES:
        raise ProtocolReject(RejectReason.MALFORMED, "tag must be 32 bytes")

    s, x_s, spub = server_keygen(p, rng)
    user_id = rng.randbytes(ID_BYTES)
    o1 = h(req.bb_t.bits, user_id)

    store.put(EnrollmentRecord(id=user_id, bb_t=req.bb_t, x_s=x_s, s=s, o1=o1))
    return EnrollResponse(o1=o1, o2=xor_bytes(req.tag, _h_secret(x_s)), s=s, spub=spub, p=p)


def auth_server_verify1(
    req: AuthRequest,
    now: int,
    store: BaseStore,
    sessions: SessionTable,
    rng: Random,
    policy: ServerPolicy,
) -> AuthChallenge:
    """
    Authenticate the user and issue the server challenge.

    Raises:
        ProtocolReject: stale-timestamp, duplicate-m1, unknown-credential,
            template-mismatch, malformed, proof-mismatch
    """
    check_fresh(req.t1, now, policy.window_ms, "t1")

    record = store.get(req.o1)
    if record is None:
        raise ProtocolReject(RejectReason.UNKNOWN_CREDENTIAL)
    if req.bb.n_bits != record.bb_t.n_bits or not digest_equal(
        h(req.bb.bits, record.id), req.o1
    ):
        raise ProtocolReject(RejectReason.TEMPLATE_MISMATCH)
    if not 0 <= req.m1 < policy.p or len(req.o2) != DIGEST_BYTES:
        raise ProtocolReject(RejectReason.MALFORMED, "m1 or o2 out of range")

    m2_prime = cheb_eval(record.x_s, req.m1, policy.p)
    temp = xor_bytes(req.o2, _h_secret(record.x_s))
    alpha_prime = xor_bytes(temp, h_fields(req.m1, m2_prime, t_ms=req.t1))
    if not digest_equal(alpha_prime, req.alpha):
        raise ProtocolReject(RejectReason.PROOF_MISMATCH, "alpha")
    # only authenticated requests enter the seen-M1 cache
    sessions.admit(req.m1, now)

    r_s = random_degree(rng)
    m3 = cheb_eval(r_s, record.s, policy.p)
    beta = h_fields(m2_prime, m3, t_ms=now)
    sessions.add(PendingSession(m1=req.m1, m2_prime=m2_prime, r_s=r_s, m3=m3, created_at=now))
    return AuthChallenge(m3=m3, beta=beta, t2=now)


def auth_server_finish(
    confirm: AuthConfirm, pending: PendingSession, now: int, policy: ServerPolicy
) -> SessionKey:
    """
    Check gamma and derive the session key. The caller has already evicted ``pending``.

    Raises:
        ProtocolReject: stale-timestamp, proof-mismatch
    """
    check_fresh(confirm.t3, now, policy.window_ms, "t3")

    m4_prime = cheb_eval(pending.r_s, pending.m1, policy.p)
    gamma_prime = h_fields(pending.m2_prime, m4_prime, t_ms=confirm.t3)
    if not digest_equal(gamma_prime, confirm.gamma):
        raise ProtocolReject(RejectReason.PROOF_MISMATCH, "gamma")
    return derive_session_key(m4_prime)


class AuthServer:
    """Enrollment store, session table and policy behind one object."""

    def __init__(
        self,
        store: BaseStore,
        policy: ServerPolicy | None = None,
        rng: Random | None = None,
    ):
        self.store = store
        self.policy = policy or ServerPolicy()
        self.rng = rng or secrets.SystemRandom()
        self.sessions = SessionTable(self.policy.window_ms, remember_m1=self.policy.hardened)

    def enroll(self, req: EnrollRequest) -> EnrollResponse:
        response = enroll_server(req, self.policy.p, self.rng, self.store)
        logger.info("Enrolled user o1=%s...", response.o1.hex()[:12])
        return response

    def verify(self, req: AuthRequest, now: int) -> AuthChallenge:
        try:
            return auth_server_verify1(
                req, now, self.store, self.sessions, self.rng, self.policy
            )
        except ProtocolReject as e:
            logger.warning("Rejected AuthRequest o1=%s...: %s", req.o1.hex()[:12], e)
            raise

    def finish(self, m1: int, confirm: AuthConfirm, now: int) -> SessionKey:
        try:
            pending = self.sessions.take(m1, now)
            key = auth_server_finish(confirm, pending, now, self.policy)
        except ProtocolReject as e:
            logger.warning("Rejected AuthConfirm: %s", e)
            raise
        logger.info("Session established, key fingerprint %s", key.fingerprint)
        return key
