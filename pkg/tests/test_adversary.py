"""Tests for the adversarial harness and the named attack scenarios."""

from random import Random

import pytest

from chebauth.crypto.fuzzy import random_vector
from chebauth.errors import ParameterError, RejectReason
from chebauth.models.attack import ActionKind, AdversaryAction, AdversaryScript, OutcomeStatus
from chebauth.models.messages import AuthRequest
from chebauth.netio.adversary import AttackHarness, Enrollment, run_attack
from chebauth.netio.scenarios import run_scenario
from chebauth.protocol.server import ServerPolicy


def _script(*actions: AdversaryAction) -> AdversaryScript:
    return AdversaryScript(actions=list(actions))


PASS = AdversaryAction()


def test_honest_run_completes(small_code):
    outcome = run_attack(AdversaryScript(), "auth", small_code, seed=1)
    assert outcome.accepted
    assert outcome.keys_match is True
    assert [e.message_type for e in outcome.transcript] == [
        "EnrollRequest",
        "EnrollResponse",
        "AuthRequest",
        "AuthChallenge",
        "AuthConfirm",
    ]
    assert [e.direction for e in outcome.transcript] == ["c2s", "s2c", "c2s", "s2c", "c2s"]


def test_dropped_confirm_aborts(small_code):
    outcome = run_attack(
        _script(PASS, PASS, AdversaryAction(kind=ActionKind.DROP)), "auth", small_code, seed=2
    )
    assert outcome.status == OutcomeStatus.ABORTED
    assert outcome.server_challenged
    assert outcome.transcript[-1].delivered is None


def test_delayed_challenge_is_stale_at_client(small_code):
    delay = AdversaryAction(kind=ActionKind.DELAY, delay_ms=31_000)
    outcome = run_attack(_script(PASS, delay), "auth", small_code, seed=3)
    assert outcome.rejected_by == "client"
    assert outcome.reason == RejectReason.STALE_TIMESTAMP


@pytest.mark.parametrize(
    ("phase", "position", "offset", "side"),
    [
        ("enroll", 0, 10, "server"),  # tag byte: alpha fails later
        ("enroll", 1, 0, "server"),  # o1 byte: unknown credential
        ("auth", 0, 110, "server"),  # alpha byte
        ("auth", 1, 40, "client"),  # beta byte
        ("auth", 2, 0, "server"),  # gamma byte
    ],
)
def test_single_byte_tamper_never_completes(small_code, phase, position, offset, side):
    actions = [PASS] * position + [AdversaryAction(kind=ActionKind.TAMPER, offset=offset)]
    outcome = run_attack(_script(*actions), phase, small_code, seed=4)
    assert not outcome.accepted
    assert outcome.rejected_by == side


def test_replay_of_unrecorded_frame_is_an_error(small_code):
    with pytest.raises(ParameterError):
        run_attack(
            _script(AdversaryAction(kind=ActionKind.REPLAY, index=7)), "auth", small_code, seed=5
        )


def test_harness_records_across_sessions(small_code):
    harness = AttackHarness(small_code, rng=Random(6))
    rng = harness.rng
    b_t = random_vector(small_code, rng)
    user = harness.enroll(b_t, b"pw")
    assert isinstance(user, Enrollment)
    assert harness.authenticate(user.credential, b_t, b"pw").accepted
    assert harness.authenticate(user.credential, b_t, b"pw").accepted
    assert len(harness.recorded) == 8
    assert harness.last_index(AuthRequest) == 5


def test_replayed_request_in_window(small_code):
    for hardened, reason in [(True, RejectReason.DUPLICATE_M1), (False, None)]:
        harness = AttackHarness(small_code, ServerPolicy(hardened=hardened), Random(7))
        b_t = random_vector(small_code, harness.rng)
        user = harness.enroll(b_t, b"pw")
        assert harness.authenticate(user.credential, b_t, b"pw").accepted

        harness.clock.advance(1_000)
        replay = AdversaryAction(kind=ActionKind.REPLAY, index=harness.last_index(AuthRequest))
        outcome = harness.authenticate(user.credential, b_t, b"pw", _script(replay))
        assert not outcome.accepted
        if hardened:
            assert (outcome.rejected_by, outcome.reason) == ("server", reason)
        else:
            assert outcome.server_challenged
            assert outcome.rejected_by == "client"
            assert outcome.reason == RejectReason.SERVER_INAUTHENTIC


def test_leak_scan(small_code):
    harness = AttackHarness(small_code, rng=Random(8))
    b_t = random_vector(small_code, harness.rng)
    user = harness.enroll(b_t, b"pw")
    harness.authenticate(user.credential, b_t, b"pw")
    assert harness.session_secrets
    assert harness.leaks() == []
    assert harness.leaks([user.credential.o1]) == [user.credential.o1]


@pytest.mark.parametrize(
    ("name", "runs"),
    [
        ("replay-stale", 100),
        ("replay-in-window", 100),
        ("tamper-sweep", 250),
        ("anonymity-scan", 100),
        ("template-scan", 100),
    ],
)
def test_scenarios_pass_in_hardened_mode(code, name, runs):
    report = run_scenario(name, code, ServerPolicy(), seed=1)
    assert report.passed, report.observed
    assert report.name == name
    assert report.trials == runs


def test_in_window_replay_documents_faithful_gap(code):
    report = run_scenario("replay-in-window", code, ServerPolicy(hardened=False), seed=2, trials=3)
    assert not report.passed
    assert "3/3 reached the server challenge, 0 completed" in report.notes[-1]


def test_unknown_scenario(code):
    with pytest.raises(ParameterError):
        run_scenario("bogus", code, ServerPolicy())
