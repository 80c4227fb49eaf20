"""Named attack scenarios built on the adversarial harness."""

from collections import Counter
from collections.abc import Callable
from random import Random

from chebauth.crypto.fuzzy import apply_block_noise, mask_template, random_vector
from chebauth.errors import ParameterError, RejectReason
from chebauth.models.attack import (
    ActionKind,
    AdversaryAction,
    AdversaryScript,
    AttackOutcome,
    ScenarioReport,
)
from chebauth.models.messages import (
    AuthChallenge,
    AuthConfirm,
    AuthRequest,
    EnrollRequest,
    EnrollResponse,
)
from chebauth.models.params import CodeParams
from chebauth.netio.adversary import AttackHarness, Enrollment, run_attack
from chebauth.netio.codec import body_size
from chebauth.protocol.server import ServerPolicy
from chebauth.store.file import encode_record

# (message type, phase, position within the phase)
TAMPER_TARGETS = [
    (EnrollRequest, "enroll", 0),
    (EnrollResponse, "enroll", 1),
    (AuthRequest, "auth", 0),
    (AuthChallenge, "auth", 1),
    (AuthConfirm, "auth", 2),
]


def _enroll_user(harness: AttackHarness) -> Enrollment:
    b_t = random_vector(harness.code, harness.rng)
    pw = harness.rng.randbytes(12).hex().encode()
    enrolled = harness.enroll(b_t, pw)
    if not isinstance(enrolled, Enrollment):
        raise RuntimeError(f"honest enrollment failed: {enrolled.reason}")
    return enrolled


def _authenticate(
    harness: AttackHarness, user: Enrollment, script: AdversaryScript | None = None
) -> AttackOutcome:
    sample = apply_block_noise(user.b_t, harness.code.t, harness.code, harness.rng)
    return harness.authenticate(user.credential, sample, user.pw, script)


def _honest_session(harness: AttackHarness) -> Enrollment:
    user = _enroll_user(harness)
    outcome = _authenticate(harness, user)
    if not outcome.accepted:
        raise RuntimeError(f"honest session failed: {outcome.reason}")
    return user


def _replay(
    code: CodeParams, policy: ServerPolicy, seed: int, trials: int, gap_ms: int
) -> tuple[Counter, int, int]:
    master = Random(seed)
    reasons: Counter = Counter()
    challenged = completed = 0
    for _ in range(trials):
        harness = AttackHarness(code, policy, Random(master.getrandbits(64)))
        user = _honest_session(harness)
        index = harness.last_index(AuthRequest)
        harness.clock.advance(gap_ms)

        script = AdversaryScript(actions=[AdversaryAction(kind=ActionKind.REPLAY, index=index)])
        outcome = _authenticate(harness, user, script)
        reasons[f"{outcome.rejected_by}:{outcome.reason.value if outcome.reason else '-'}"] += 1
        challenged += outcome.server_challenged
        completed += outcome.accepted
    return reasons, challenged, completed


def replay_stale(code: CodeParams, policy: ServerPolicy, seed: int, trials: int) -> ScenarioReport:
    """Replay a recorded AuthRequest after the freshness window has passed."""
    reasons, _, completed = _replay(
        code, policy, seed, trials, policy.window_ms + 1_000
    )
    stale = reasons[f"server:{RejectReason.STALE_TIMESTAMP.value}"]
    return ScenarioReport(
        name="replay-stale",
        passed=stale == trials and completed == 0,
        trials=trials,
        expected=f"server rejects {trials}/{trials} with stale-timestamp",
        observed=f"stale-timestamp {stale}/{trials}, completed {completed}",
        notes=[f"{k} x{v}" for k, v in sorted(reasons.items())],
    )


def replay_in_window(
    code: CodeParams, policy: ServerPolicy, seed: int, trials: int
) -> ScenarioReport:
    """Replay a recorded AuthRequest one second after the original, inside the window."""
    reasons, challenged, completed = _replay(
        code, policy, seed, trials, 1_000
    )
    blocked = reasons[f"server:{RejectReason.DUPLICATE_M1.value}"]
    notes = [f"{k} x{v}" for k, v in sorted(reasons.items())]
    if not policy.hardened:
        notes.append(
            f"faithful-paper mode: timestamps alone admit the replay; "
            f"{challenged}/{trials} reached the server challenge, {completed} completed"
        )
    return ScenarioReport(
        name="replay-in-window",
        passed=blocked == trials and completed == 0,
        trials=trials,
        expected=f"server rejects {trials}/{trials} with duplicate-m1 (hardened mode)",
        observed=f"duplicate-m1 {blocked}/{trials}, challenged {challenged}, completed {completed}",
        notes=notes,
    )


def tamper_sweep(code: CodeParams, policy: ServerPolicy, seed: int, trials: int) -> ScenarioReport:
    """XOR one random body byte of each message type, ``trials`` offsets per type."""
    master = Random(seed)
    reasons: Counter = Counter()
    completed = 0
    for message_type, phase, position in TAMPER_TARGETS:
        size = body_size(message_type.TAG, code)
        for _ in range(trials):
            actions = [AdversaryAction() for _ in range(position)]
            actions.append(
                AdversaryAction(
                    kind=ActionKind.TAMPER,
                    offset=master.randrange(size),
                    mask=master.randrange(1, 256),
                )
            )
            outcome = run_attack(
                AdversaryScript(actions=actions),
                phase,
                code,
                policy,
                seed=master.getrandbits(64),
            )
            completed += outcome.accepted
            reasons[f"{message_type.__name__} -> {outcome.rejected_by}:"
                    f"{outcome.reason.value if outcome.reason else outcome.status.value}"] += 1

    runs = trials * len(TAMPER_TARGETS)
    return ScenarioReport(
        name="tamper-sweep",
        passed=completed == 0,
        trials=runs,
        expected=f"0/{runs} sessions complete",
        observed=f"{runs - completed}/{runs} rejected, {completed} completed",
        notes=[f"{k} x{v}" for k, v in sorted(reasons.items())],
    )


def anonymity_scan(
    code: CodeParams, policy: ServerPolicy, seed: int, trials: int
) -> ScenarioReport:
    """Run ``trials`` honest sessions and search every frame for any user ID."""
    harness = AttackHarness(code, policy, Random(seed))
    users = [_honest_session(harness) for _ in range(trials)]
    hits = harness.leaks([u.user_id for u in users])
    return ScenarioReport(
        name="anonymity-scan",
        passed=not hits,
        trials=trials,
        expected="0 transcript hits for any id",
        observed=f"{len(hits)} hits over {len(harness.transcript)} frames",
    )


def template_scan(
    code: CodeParams, policy: ServerPolicy, seed: int, trials: int
) -> ScenarioReport:
    """
    Check that no secret crosses the wire and the store holds only the masked template.

    Secrets: b_t, K_T, id, X_S, R_C, R_S. The masked template must unmask
    to b_t with K_T and differ from it without.
    """
    harness = AttackHarness(code, policy, Random(seed))
    users = [_honest_session(harness) for _ in range(trials)]
    wire_leaks = harness.leaks()

    store_leaks = unmask_failures = 0
    for user in users:
        record = harness.server.store.get(user.credential.o1)
        stored = encode_record(record)
        store_leaks += (user.b_t.bits in stored) + (user.key in stored)
        if mask_template(record.bb_t, user.key) != user.b_t or record.bb_t == user.b_t:
            unmask_failures += 1

    return ScenarioReport(
        name="template-scan",
        passed=not wire_leaks and store_leaks == 0 and unmask_failures == 0,
        trials=trials,
        expected="no secret on the wire; store holds bb_t only, unmaskable only with K",
        observed=(
            f"wire leaks {len(wire_leaks)}, store leaks {store_leaks}, "
            f"unmask failures {unmask_failures}"
        ),
    )


SCENARIOS: dict[str, Callable[[CodeParams, ServerPolicy, int, int], ScenarioReport]] = {
    "replay-stale": replay_stale,
    "replay-in-window": replay_in_window,
    "tamper-sweep": tamper_sweep,
    "anonymity-scan": anonymity_scan,
    "template-scan": template_scan,
}

DEFAULT_TRIALS = {
    "replay-stale": 100,
    "replay-in-window": 100,
    "tamper-sweep": 50,
    "anonymity-scan": 100,
    "template-scan": 100,
}


def run_scenario(
    name: str,
    code: CodeParams,
    policy: ServerPolicy,
    seed: int = 0,
    trials: int | None = None,
) -> ScenarioReport:
    """
    Run a named scenario.

    Raises:
        ParameterError: If the scenario name is unknown
    """
    if name not in SCENARIOS:
        raise ParameterError(f"unknown scenario {name!r}; choose from {', '.join(SCENARIOS)}")
    return SCENARIOS[name](code, policy, seed, trials or DEFAULT_TRIALS[name])
