"""Enrollment and three-round mutual authentication."""

from chebauth.protocol.client import (
    auth_client_finish,
    auth_client_start,
    credential_from_response,
    enroll_client,
)
from chebauth.protocol.server import (
    AuthServer,
    ServerPolicy,
    auth_server_finish,
    auth_server_verify1,
    enroll_server,
)
from chebauth.protocol.sessions import DEFAULT_WINDOW_MS, SessionTable

__all__ = [
    "DEFAULT_WINDOW_MS",
    "AuthServer",
    "ServerPolicy",
    "SessionTable",
    "auth_client_finish",
    "auth_client_start",
    "auth_server_finish",
    "auth_server_verify1",
    "credential_from_response",
    "enroll_client",
    "enroll_server",
]
