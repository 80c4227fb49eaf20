"""Exception hierarchy."""

from enum import Enum


class ChebAuthError(Exception):
    """Base class for all chebauth errors."""


class ParameterError(ChebAuthError):
    """Invalid arithmetic, code or vector parameters."""


class ConfigError(ChebAuthError):
    """Invalid configuration file or flags."""


class RejectReason(str, Enum):
    """Why a protocol step refused to continue."""

    STALE_TIMESTAMP = "stale-timestamp"
    UNKNOWN_CREDENTIAL = "unknown-credential"
    TEMPLATE_MISMATCH = "template-mismatch"
    PROOF_MISMATCH = "proof-mismatch"
    DUPLICATE_M1 = "duplicate-m1"
    SERVER_INAUTHENTIC = "server-inauthentic"
    UNKNOWN_SESSION = "unknown-session"
    MALFORMED = "malformed"
    ENROLLMENT_REFUSED = "enrollment-refused"
    REFUSED_BY_SERVER = "refused-by-server"


class ProtocolReject(ChebAuthError):
    """A protocol check failed. The reason is for logs only, never for the wire."""

    def __init__(self, reason: RejectReason, detail: str = ""):
        self.reason = reason
        self.detail = detail
        super().__init__(f"{reason.value}: {detail}" if detail else reason.value)


class StoreError(ChebAuthError):
    """Enrollment store failure."""


class StoreConflictError(StoreError):
    """A record with the same O1 digest already exists."""


class StoreIntegrityError(StoreError):
    """Stored bytes do not decode to a valid record."""

    def __init__(self, offset: int, message: str):
        self.offset = offset
        super().__init__(f"offset {offset}: {message}")


class FramingError(ChebAuthError):
    """Wire frame could not be parsed."""
