"""Client side of enrollment and authentication."""

from random import Random

from chebauth.crypto.chebyshev import cheb_eval, random_degree
from chebauth.crypto.fuzzy import BioKey, fe_gen, fe_rep, mask_template
from chebauth.crypto.hashing import digest_equal, h, h_fields, xor_bytes
from chebauth.errors import ProtocolReject, RejectReason
from chebauth.models.biometric import BiometricVector, HelperData
from chebauth.models.messages import (
    AuthChallenge,
    AuthConfirm,
    AuthRequest,
    EnrollRequest,
    EnrollResponse,
)
from chebauth.models.params import CodeParams
from chebauth.models.records import ClientCredential
from chebauth.models.session import ClientState, SessionKey
from chebauth.protocol.sessions import DEFAULT_WINDOW_MS, check_fresh, derive_session_key


def enroll_client(
    b_t: BiometricVector, pw: bytes, code: CodeParams, rng: Random
) -> tuple[EnrollRequest, tuple[BioKey, HelperData]]:
    """
    Build the enrollment request.

    Args:
        b_t: Enrollment biometric
        pw: Password
        code: Code parameters
        rng: Random source

    Returns:
        The request (BB_T, h(K_T || PW_T)) and the locally kept (K_T, HD)
    """
    key, hd = fe_gen(b_t, pw, code, rng)
    request = EnrollRequest(bb_t=mask_template(b_t, key), tag=h(key, pw))
    return request, (key, hd)


def credential_from_response(response: EnrollResponse, hd: HelperData) -> ClientCredential:
    """Combine the server package with the locally kept helper data."""
    return ClientCredential(
        o1=response.o1,
        o2=response.o2,
        s=response.s,
        spub=response.spub,
        p=response.p,
        hd=hd,
    )


def auth_client_start(
    cred: ClientCredential,
    b: BiometricVector,
    pw: bytes,
    now: int,
    rng: Random,
    window_ms: int = DEFAULT_WINDOW_MS,
) -> tuple[AuthRequest, ClientState]:
    """
    First authentication message.

    BB is computed from the reconstructed template, not the raw sample, so
    that it equals the enrolled BB_T whenever the noise is within capacity.
    """
    params = cred.params
    key, w = fe_rep(b, pw, cred.hd)
    bb = mask_template(w, key)

    r_c = random_degree(rng)
    m1 = cheb_eval(r_c, params.s, params.p)
    m2 = cheb_eval(r_c, params.spub, params.p)
    alpha = xor_bytes(h(key, pw), h_fields(m1, m2, t_ms=now))

    request = AuthRequest(o1=cred.o1, o2=cred.o2, bb=bb, m1=m1, alpha=alpha, t1=now)
    state = ClientState(p=params.p, r_c=r_c, m2=m2, window_ms=window_ms)
    return request, state


def auth_client_finish(
    challenge: AuthChallenge, state: ClientState, now: int
) -> tuple[AuthConfirm, SessionKey]:
    """
    Verify the server (beta) and answer with gamma.

    Raises:
        ProtocolReject: stale-timestamp, or server-inauthentic when beta does not verify
    """
    check_fresh(challenge.t2, now, state.window_ms, "t2")

    if not 0 <= challenge.m3 < state.p:
        raise ProtocolReject(RejectReason.SERVER_INAUTHENTIC, "m3 out of range")
    beta_prime = h_fields(state.m2, challenge.m3, t_ms=challenge.t2)
    if not digest_equal(beta_prime, challenge.beta):
        raise ProtocolReject(RejectReason.SERVER_INAUTHENTIC, "beta mismatch")

    m4 = cheb_eval(state.r_c, challenge.m3, state.p)
    gamma = h_fields(state.m2, m4, t_ms=now)
    return AuthConfirm(gamma=gamma, t3=now), derive_session_key(m4)
