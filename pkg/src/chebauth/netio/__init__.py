"""Wire codec, TCP transport and the adversarial test harness."""

from chebauth.netio.adversary import AttackHarness, VirtualClock, run_attack
from chebauth.netio.codec import decode, encode, read_frame, write_frame
from chebauth.netio.scenarios import SCENARIOS, run_scenario
from chebauth.netio.transport import (
    DEFAULT_PORT,
    ProtocolServer,
    authenticate_remote,
    enroll_remote,
    serve,
)

__all__ = [
    "DEFAULT_PORT",
    "SCENARIOS",
    "AttackHarness",
    "ProtocolServer",
    "VirtualClock",
    "authenticate_remote",
    "decode",
    "encode",
    "enroll_remote",
    "read_frame",
    "run_attack",
    "run_scenario",
    "serve",
]
