"""Shared fixtures."""

import logging
from random import Random

import pytest

from chebauth.crypto.fuzzy import random_vector
from chebauth.models.params import CodeParams
from chebauth.netio.adversary import VirtualClock
from chebauth.protocol.client import credential_from_response, enroll_client
from chebauth.protocol.server import AuthServer, ServerPolicy
from chebauth.store.memory import MemoryStore

# Small primes for exhaustive or oracle checks
SMALL_PRIMES = [7, 11, 13, 101, 7919, 65_537, 2_147_483_647]


class ScriptedRandom(Random):
    """Random whose randrange/getrandbits return queued values first."""

    def __init__(self, randrange=(), getrandbits=()):
        super().__init__(0)
        self._randrange = list(randrange)
        self._getrandbits = list(getrandbits)

    def randrange(self, *args, **kwargs):
        if self._randrange:
            return self._randrange.pop(0)
        return super().randrange(*args, **kwargs)

    def getrandbits(self, k):
        if self._getrandbits:
            return self._getrandbits.pop(0)
        return super().getrandbits(k)


@pytest.fixture(autouse=True)
def _restore_logging():
    """CLI tests install a Rich handler; put the package logger back afterwards."""
    root = logging.getLogger("chebauth")
    protocol = logging.getLogger("chebauth.protocol")
    saved = (list(root.handlers), root.level, root.propagate, protocol.level)
    yield
    root.handlers, root.level, root.propagate = saved[0], saved[1], saved[2]
    protocol.setLevel(saved[3])


@pytest.fixture
def rng() -> Random:
    return Random(1234)


@pytest.fixture
def code() -> CodeParams:
    """Full-size repetition code, N = 640."""
    return CodeParams()


@pytest.fixture
def small_code() -> CodeParams:
    """k=16, r=3: N = 48, t = 1."""
    return CodeParams(k=16, r=3)


@pytest.fixture
def clock() -> VirtualClock:
    return VirtualClock()


@pytest.fixture
def policy() -> ServerPolicy:
    return ServerPolicy()


@pytest.fixture
def server(policy, rng) -> AuthServer:
    return AuthServer(MemoryStore(), policy, rng)


@pytest.fixture
def enrolled(server, code, rng):
    """One user enrolled on ``server``: (credential, b_t, pw)."""
    b_t = random_vector(code, rng)
    pw = b"correct horse"
    request, (_, hd) = enroll_client(b_t, pw, code, rng)
    cred = credential_from_response(server.enroll(request), hd)
    return cred, b_t, pw


@pytest.fixture
def store_path(tmp_path):
    return tmp_path / "users.db"
