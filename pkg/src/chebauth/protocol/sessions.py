"""Server-side session table and freshness helpers."""

import threading

from chebauth.crypto.chebyshev import field_to_bytes
from chebauth.crypto.hashing import h
from chebauth.errors import ProtocolReject, RejectReason
from chebauth.models.session import PendingSession, SessionKey

DEFAULT_WINDOW_MS = 30_000


def check_fresh(t_ms: int, now_ms: int, window_ms: int, label: str) -> None:
    """Reject when a message timestamp is more than window_ms away from now."""
    if abs(now_ms - t_ms) > window_ms:
        raise ProtocolReject(
            RejectReason.STALE_TIMESTAMP, f"{label} off by {now_ms - t_ms} ms"
        )


def derive_session_key(m4: int) -> SessionKey:
    return SessionKey(key=h(b"SK", field_to_bytes(m4)))


class SessionTable:
    """
    Pending sessions keyed by M1, plus a cache of every M1 seen in the window.

    The seen cache outlives session completion, so an in-window replay of a
    finished session is still caught. With ``remember_m1=False`` only the
    timestamp check guards against replay.
    """

    def __init__(self, window_ms: int = DEFAULT_WINDOW_MS, remember_m1: bool = True):
        self.window_ms = window_ms
        self.remember_m1 = remember_m1
        self._pending: dict[int, PendingSession] = {}
        self._seen: dict[int, int] = {}
        self._lock = threading.Lock()

    def _purge(self, now_ms: int) -> None:
        cutoff = now_ms - self.window_ms
        self._pending = {k: v for k, v in self._pending.items() if v.created_at >= cutoff}
        self._seen = {k: v for k, v in self._seen.items() if v >= cutoff}

    def admit(self, m1: int, now_ms: int) -> None:
        """Mark M1 as seen, rejecting it if it already was (hardened mode only)."""
        with self._lock:
            self._purge(now_ms)
            if self.remember_m1:
                if m1 in self._seen or m1 in self._pending:
                    raise ProtocolReject(RejectReason.DUPLICATE_M1)
                self._seen[m1] = now_ms

    def add(self, pending: PendingSession) -> None:
        with self._lock:
            self._pending[pending.m1] = pending

    def take(self, m1: int, now_ms: int) -> PendingSession:
        """Remove and return the pending session for M1."""
        with self._lock:
            self._purge(now_ms)
            pending = self._pending.pop(m1, None)
        if pending is None:
            raise ProtocolReject(RejectReason.UNKNOWN_SESSION)
        return pending

    def peek(self, m1: int) -> PendingSession | None:
        with self._lock:
            return self._pending.get(m1)

    def __len__(self) -> int:
        return len(self._pending)
