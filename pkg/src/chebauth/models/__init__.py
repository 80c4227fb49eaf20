"""Data models for chebauth."""

from chebauth.models.biometric import BiometricVector, HelperData
from chebauth.models.messages import (
    AuthChallenge,
    AuthConfirm,
    AuthRequest,
    EnrollRequest,
    EnrollResponse,
    Failure,
    WireMessage,
)
from chebauth.models.params import ChebParams, CodeParams
from chebauth.models.records import ClientCredential, EnrollmentRecord
from chebauth.models.session import ClientState, PendingSession, SessionKey

__all__ = [
    "AuthChallenge",
    "AuthConfirm",
    "AuthRequest",
    "BiometricVector",
    "ChebParams",
    "ClientCredential",
    "ClientState",
    "CodeParams",
    "EnrollRequest",
    "EnrollResponse",
    "EnrollmentRecord",
    "Failure",
    "HelperData",
    "PendingSession",
    "SessionKey",
    "WireMessage",
]
