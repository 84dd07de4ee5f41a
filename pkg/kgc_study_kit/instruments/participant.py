"""
Pre-questionnaire participant model: role, training, competencies, motivation.
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import Optional

from kgc_study_kit.errors import RangeError, SchemaError


class Role(str, Enum):
    BACHELOR_STUDENT = "bachelor_student"
    MASTER_STUDENT = "master_student"
    PHD_STUDENT = "phd_student"
    POSTDOC_RESEARCHER = "postdoc_researcher"
    ACADEMIC_STAFF = "academic_staff"
    INDUSTRY_DEVELOPER = "industry_developer"
    KNOWLEDGE_ENGINEER = "knowledge_engineer"
    DATA_SCIENTIST = "data_scientist"
    OTHER = "other"


class ParticipationMode(str, Enum):
    VOLUNTARY = "voluntary"
    MANDATORY = "mandatory"


def check_likert(value, what: str, low: int = 1, high: int = 5) -> int:
    if isinstance(value, bool) or not isinstance(value, int) or not low <= value <= high:
        raise RangeError(f"{what} must be an integer in {low}-{high}, got {value!r}")
    return value


@dataclass(frozen=True)
class Motivation:
    enjoyment: int
    curiosity: int
    value: int

    def __post_init__(self):
        for name in ("enjoyment", "curiosity", "value"):
            check_likert(getattr(self, name), f"motivation.{name}")


@dataclass(frozen=True)
class ParticipantRecord:
    participant_id: str
    group_label: str
    current_role: Role
    formal_training: tuple = ()
    competencies: dict = field(default_factory=dict)
    motivation: Optional[Motivation] = None
    participation_mode: ParticipationMode = ParticipationMode.VOLUNTARY
    help_count: Optional[int] = None

    def __post_init__(self):
        if not self.participant_id or not self.participant_id.strip():
            raise SchemaError("responses.csv", "participant_id", "empty participant id")
        if not isinstance(self.current_role, Role):
            try:
                object.__setattr__(self, "current_role", Role(self.current_role))
            except ValueError:
                raise SchemaError("responses.csv", "current_role", f"unknown role {self.current_role!r}")
        if not isinstance(self.participation_mode, ParticipationMode):
            try:
                object.__setattr__(self, "participation_mode", ParticipationMode(self.participation_mode))
            except ValueError:
                raise SchemaError(
                    "responses.csv", "participation_mode", f"unknown mode {self.participation_mode!r}"
                )
        object.__setattr__(self, "formal_training", tuple(self.formal_training))
        for tech, level in self.competencies.items():
            check_likert(level, f"competency '{tech}'")
        if self.help_count is not None and (isinstance(self.help_count, bool) or self.help_count < 0):
            raise RangeError(f"help_count must be a non-negative integer, got {self.help_count!r}")
