"""Adversary scripts, transcripts and attack outcomes."""

from enum import Enum
from pathlib import Path
from typing import Literal

import yaml
from pydantic import BaseModel, Field, model_validator

from chebauth.errors import ParameterError, RejectReason


class ActionKind(str, Enum):
    """What the adversary does with one intercepted message."""

    PASS = "pass"
    DROP = "drop"
    REPLAY = "replay"
    TAMPER = "tamper"
    DELAY = "delay"


class AdversaryAction(BaseModel):
    """One scripted action."""

    kind: ActionKind = Field(default=ActionKind.PASS, description="Action type")
    index: int | None = Field(default=None, description="Recorded frame to replay")
    offset: int = Field(default=0, description="Body byte offset to tamper")
    mask: int = Field(default=0x01, description="XOR mask for the tampered byte")
    delay_ms: int = Field(default=0, description="Clock advance before delivery")

    @model_validator(mode="after")
    def _check_fields(self) -> "AdversaryAction":
        if self.kind == ActionKind.REPLAY and (self.index is None or self.index < 0):
            raise ParameterError("replay needs a non-negative recorded index")
        if self.kind == ActionKind.TAMPER and not 1 <= self.mask <= 0xFF:
            raise ParameterError("tamper mask must be in [1, 255]")
        if self.delay_ms < 0:
            raise ParameterError("delay must be non-negative")
        return self


class AdversaryScript(BaseModel):
    """Actions applied, in order, to the messages of one phase. Missing entries pass."""

    actions: list[AdversaryAction] = Field(default_factory=list, description="Per-message actions")

    def action_for(self, position: int) -> AdversaryAction:
        if position < len(self.actions):
            return self.actions[position]
        return AdversaryAction()

    @classmethod
    def from_yaml(cls, path: Path) -> "AdversaryScript":
        """
        Load a script such as::

            actions:
              - kind: pass
              - kind: tamper
                offset: 3
                mask: 0x80
        """
        try:
            data = yaml.safe_load(Path(path).read_text(encoding="utf-8")) or {}
        except yaml.YAMLError as e:
            raise ParameterError(f"invalid adversary script {path}: {e}") from e
        if isinstance(data, list):
            data = {"actions": data}
        return cls.model_validate(data)


Direction = Literal["c2s", "s2c"]


class TranscriptEntry(BaseModel):
    """One intercepted frame and what the adversary did with it."""

    index: int = Field(..., description="Position in the recording")
    direction: Direction = Field(..., description="c2s or s2c")
    message_type: str = Field(..., description="Message class name of the original frame")
    action: ActionKind = Field(..., description="Applied action")
    original: bytes = Field(..., description="Frame as sent")
    delivered: bytes | None = Field(default=None, description="Frame as delivered, None if dropped")


class OutcomeStatus(str, Enum):
    COMPLETED = "completed"
    REJECTED = "rejected"
    ABORTED = "aborted"


class AttackOutcome(BaseModel):
    """Result of one scripted run."""

    status: OutcomeStatus = Field(..., description="How the run ended")
    rejected_by: Literal["client", "server"] | None = Field(
        default=None, description="Which side refused"
    )
    reason: RejectReason | None = Field(default=None, description="Which check fired")
    server_challenged: bool = Field(
        default=False, description="Server accepted the first message and issued a challenge"
    )
    keys_match: bool | None = Field(default=None, description="Session keys equal on both sides")
    transcript: list[TranscriptEntry] = Field(default_factory=list, description="All frames")

    @property
    def accepted(self) -> bool:
        return self.status == OutcomeStatus.COMPLETED


class ScenarioReport(BaseModel):
    """Verdict of a named attack scenario."""

    name: str = Field(..., description="Scenario name")
    passed: bool = Field(..., description="Observed outcome matches the expected one")
    trials: int = Field(..., description="Runs performed")
    expected: str = Field(..., description="Expected outcome")
    observed: str = Field(..., description="Observed outcome")
    notes: list[str] = Field(default_factory=list, description="Extra findings")
