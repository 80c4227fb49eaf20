"""Simulated authentication sessions for the FAR/FRR evaluation."""

import logging
from collections import Counter
from datetime import datetime
from pathlib import Path
from random import Random

from chebauth.crypto.fuzzy import apply_block_noise, random_vector
from chebauth.errors import ParameterError, ProtocolReject, RejectReason
from chebauth.models.biometric import BiometricVector
from chebauth.models.records import ClientCredential
from chebauth.models.trial import (
    AttemptKind,
    AttemptResult,
    EvalConfig,
    EvalReport,
    GroupResult,
)
from chebauth.netio.adversary import VirtualClock
from chebauth.protocol.client import (
    auth_client_finish,
    auth_client_start,
    credential_from_response,
    enroll_client,
)
from chebauth.protocol.server import AuthServer, ServerPolicy
from chebauth.store.memory import MemoryStore

logger = logging.getLogger(__name__)

GENUINE_GROUP = "A"
IMPOSTOR_GROUPS = ("B", "C", "D")


def run_session(
    server: AuthServer,
    cred: ClientCredential,
    b: BiometricVector,
    pw: bytes,
    clock: VirtualClock,
    rng: Random,
) -> tuple[bool, RejectReason | None]:
    """
    Run one honest-channel authentication in process.

    Returns:
        (accepted, reason); accepted means both sides derived the same key
    """
    window = server.policy.window_ms
    try:
        request, state = auth_client_start(cred, b, pw, clock(), rng, window)
        challenge = server.verify(request, clock())
        confirm, client_key = auth_client_finish(challenge, state, clock())
        server_key = server.finish(request.m1, confirm, clock())
    except ProtocolReject as e:
        return False, e.reason
    return client_key == server_key, None


def _split(total: int, parts: int) -> list[int]:
    base, extra = divmod(total, parts)
    return [base + (i < extra) for i in range(parts)]


def run_eval(config: EvalConfig) -> EvalReport:
    """
    Run genuine and impostor attempts against a freshly enrolled population.

    Genuine attempts present the enrolled vector with ``config.noise`` flips
    in every block. Impostors present a fresh random vector with the correct
    password, so only the biometric factor is tested. The run is fully
    determined by ``config.seed``.

    Args:
        config: Evaluation configuration

    Returns:
        EvalReport with group A (genuine) and groups B, C, D (impostors)
    """
    code = config.code
    if config.noise > code.r:
        raise ParameterError(f"noise must be at most r={code.r}")

    rng = Random(config.seed)
    clock = VirtualClock()
    policy = ServerPolicy(p=config.p, window_ms=config.window_ms)
    server = AuthServer(MemoryStore(), policy, rng)

    report = EvalReport(config=config, started_at=datetime.now())

    users: list[tuple[ClientCredential, BiometricVector, bytes]] = []
    for _ in range(config.population):
        b_t = random_vector(code, rng)
        pw = rng.randbytes(12).hex().encode()
        request, (_, hd) = enroll_client(b_t, pw, code, rng)
        users.append((credential_from_response(server.enroll(request), hd), b_t, pw))
    logger.debug("Enrolled %d users for evaluation", len(users))

    reasons: Counter = Counter()

    def attempt(kind: AttemptKind, group: str) -> AttemptResult:
        cred, b_t, pw = users[rng.randrange(len(users))]
        if kind == AttemptKind.GENUINE:
            sample = apply_block_noise(b_t, config.noise, code, rng)
        else:
            sample = random_vector(code, rng)
        clock.advance(config.step_ms)
        accepted, reason = run_session(server, cred, sample, pw, clock, rng)
        if reason is not None:
            reasons[reason.value] += 1
        return AttemptResult(kind=kind, group=group, accepted=accepted, reason=reason)

    plan = [(GENUINE_GROUP, AttemptKind.GENUINE, config.trials)]
    plan += [
        (name, AttemptKind.IMPOSTOR, size)
        for name, size in zip(IMPOSTOR_GROUPS, _split(config.trials, len(IMPOSTOR_GROUPS)))
    ]
    for name, kind, size in plan:
        group = GroupResult(name=name, kind=kind)
        for _ in range(size):
            result = attempt(kind, name)
            group.attempts += 1
            group.accepted += result.accepted
        report.groups.append(group)
        logger.debug("Group %s: %d/%d accepted", name, group.accepted, group.attempts)

    report.reasons = dict(sorted(reasons.items()))
    report.finished_at = datetime.now()
    return report


def format_report(report: EvalReport) -> str:
    """
    Fixed-width accuracy table followed by the machine-readable RESULT line.

    Contains no timings, so a given configuration always renders identically.
    """
    cfg = report.config
    lines = [
        f"trials={cfg.trials} noise={cfg.noise} seed={cfg.seed} "
        f"k={cfg.code.k} r={cfg.code.r} t={cfg.code.t}",
        f"{'group':<8}{'kind':<10}{'attempts':>10}{'accepted':>10}{'rejected':>10}{'rate':>9}",
    ]
    for g in report.groups:
        metric = "FRR" if g.kind == AttemptKind.GENUINE else "FAR"
        lines.append(
            f"{g.name:<8}{g.kind.value:<10}{g.attempts:>10}{g.accepted:>10}"
            f"{g.rejected:>10}  {metric} {g.error_rate:.3f}"
        )
    lines.append(f"{'average':<8}{'impostor':<10}{'':>30}  FAR {report.far:.3f}")
    lines.append(report.result_line())
    return "\n".join(lines) + "\n"


def save_report(report: EvalReport, output: Path) -> Path:
    """Write the report as JSON (timings included) and return the path."""
    output.parent.mkdir(parents=True, exist_ok=True)
    output.write_text(report.model_dump_json(indent=2), encoding="utf-8")
    return output
