"""
In-memory study dataset: declarations, participants, task results and
questionnaire answers, as produced by load_study.
"""

from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from kgc_study_kit.grading.accuracy import TaskStatus
from kgc_study_kit.instruments.participant import ParticipantRecord
from kgc_study_kit.instruments.scores import InstrumentResponse
from kgc_study_kit.rdf.terms import RdfGraph

STUDY_FORMAT_VERSION = "kgc-study.v1"

CORE_TASKS = ("T1", "T2", "T3", "T4", "T5")
# variant studies (second tool or language) may only swap the last two tasks
VARIANT_TASKS = ("T4", "T5")


@dataclass(frozen=True)
class NamingPolicy:
    """How fixture IRIs are minted. Templates are formatted with `slug` or `id`."""
    base: str = "http://example.com/"
    employee_template: str = "employee/{slug}"
    project_template: str = "project/{id}"
    task_template: str = "task/{id}"

    def as_dict(self) -> dict:
        return {
            "base": self.base,
            "employee": self.employee_template,
            "project": self.project_template,
            "task": self.task_template,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "NamingPolicy":
        default = cls()
        return cls(
            base=data.get("base", default.base),
            employee_template=data.get("employee", default.employee_template),
            project_template=data.get("project", default.project_template),
            task_template=data.get("task", default.task_template),
        )


@dataclass(frozen=True)
class TaskDeclaration:
    task_id: str
    description: str
    expected_graph_path: str  # relative to the study root, POSIX separators
    expected_graph: RdfGraph = field(default_factory=RdfGraph, compare=True)


@dataclass(frozen=True)
class GroupDeclaration:
    group_label: str
    tool_or_language_name: str
    variant_tasks: dict = field(default_factory=dict)  # "T4"/"T5" -> TaskDeclaration


@dataclass(frozen=True)
class TaskResult:
    status: TaskStatus
    execution_time_seconds: Optional[float] = None
    submission_path: Optional[str] = None
    submission: Optional[RdfGraph] = None


@dataclass(frozen=True)
class StudyDataset:
    study_id: str
    groups: tuple
    tasks: dict  # task id -> TaskDeclaration
    participants: tuple  # ParticipantRecord, in responses.csv order
    task_results: dict  # (participant id, task id) -> TaskResult
    instrument_responses: dict  # participant id -> InstrumentResponse
    timing_method: str
    time_limit_seconds: Optional[float] = None
    variant_note: Optional[str] = None
    naming_policy: Optional[NamingPolicy] = None
    missing_submissions: tuple = ()
    root: Optional[Path] = field(default=None, compare=False)

    def group(self, label: str) -> GroupDeclaration:
        for g in self.groups:
            if g.group_label == label:
                return g
        raise KeyError(label)

    def group_labels(self) -> list[str]:
        return [g.group_label for g in self.groups]

    def participant(self, participant_id: str) -> ParticipantRecord:
        for p in self.participants:
            if p.participant_id == participant_id:
                return p
        raise KeyError(participant_id)

    def participants_in(self, group_label: str) -> list[ParticipantRecord]:
        return [p for p in self.participants if p.group_label == group_label]

    def task_declaration(self, group_label: str, task_id: str) -> TaskDeclaration:
        """The task as seen by a group: its variant when it declares one."""
        variant = self.group(group_label).variant_tasks.get(task_id)
        return variant if variant is not None else self.tasks[task_id]

    def responses_for(self, participant_id: str) -> InstrumentResponse:
        return self.instrument_responses[participant_id]
