"""Evaluation configuration and result models."""

from datetime import datetime
from enum import Enum

from pydantic import BaseModel, Field

from chebauth.crypto.chebyshev import DEFAULT_PRIME
from chebauth.errors import RejectReason
from chebauth.models.params import CodeParams
from chebauth.protocol.sessions import DEFAULT_WINDOW_MS


class AttemptKind(str, Enum):
    """Who presents the biometric."""

    GENUINE = "genuine"
    IMPOSTOR = "impostor"


class EvalConfig(BaseModel):
    """Configuration for one FAR/FRR evaluation run."""

    trials: int = Field(..., ge=1, description="Genuine attempts, and impostor attempts")
    noise: int = Field(..., ge=0, description="Genuine bit flips per r-bit block")
    seed: int = Field(default=0, description="Seed for every random choice")
    population: int = Field(default=16, ge=1, description="Enrolled users to draw from")
    code: CodeParams = Field(default_factory=CodeParams, description="Code parameters")
    p: int = Field(default=DEFAULT_PRIME, description="Chebyshev prime")
    window_ms: int = Field(default=DEFAULT_WINDOW_MS, description="Freshness window")
    step_ms: int = Field(default=1_000, description="Virtual time between attempts")


class AttemptResult(BaseModel):
    """Outcome of one simulated session."""

    kind: AttemptKind = Field(..., description="Genuine or impostor")
    group: str = Field(..., description="Report group (A genuine, B/C/D impostor)")
    accepted: bool = Field(..., description="Both sides derived the same session key")
    reason: RejectReason | None = Field(default=None, description="Which check fired")


class GroupResult(BaseModel):
    """Per-group tally in the accuracy table."""

    name: str = Field(..., description="Group label")
    kind: AttemptKind = Field(..., description="Genuine or impostor")
    attempts: int = Field(default=0, description="Attempts in the group")
    accepted: int = Field(default=0, description="Attempts that completed")

    @property
    def rejected(self) -> int:
        return self.attempts - self.accepted

    @property
    def error_rate(self) -> float:
        """FRR for the genuine group, FAR for impostor groups."""
        if self.attempts == 0:
            return 0.0
        errors = self.rejected if self.kind == AttemptKind.GENUINE else self.accepted
        return errors / self.attempts


class EvalReport(BaseModel):
    """Result of an evaluation run."""

    config: EvalConfig = Field(..., description="Run configuration")
    groups: list[GroupResult] = Field(default_factory=list, description="Group tallies")
    reasons: dict[str, int] = Field(default_factory=dict, description="Reject reason counts")

    started_at: datetime | None = Field(default=None, description="Run start time")
    finished_at: datetime | None = Field(default=None, description="Run finish time")

    @property
    def duration_sec(self) -> float | None:
        if self.started_at and self.finished_at:
            return (self.finished_at - self.started_at).total_seconds()
        return None

    def _of(self, kind: AttemptKind) -> list[GroupResult]:
        return [g for g in self.groups if g.kind == kind]

    @property
    def far(self) -> float:
        impostors = self._of(AttemptKind.IMPOSTOR)
        total = sum(g.attempts for g in impostors)
        return sum(g.accepted for g in impostors) / total if total else 0.0

    @property
    def frr(self) -> float:
        genuine = self._of(AttemptKind.GENUINE)
        total = sum(g.attempts for g in genuine)
        return sum(g.rejected for g in genuine) / total if total else 0.0

    def result_line(self) -> str:
        return f"RESULT far={self.far:.3f} frr={self.frr:.3f}"
