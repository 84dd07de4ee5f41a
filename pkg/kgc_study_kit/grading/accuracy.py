"""
Triple-level accuracy: precision, recall and F-measure per task and globally.

Both graphs are canonicalized before comparison, so blank nodes only count as
matching when the canonical labelings agree. Ratios are computed from integer
counts with exact fractions and converted to float once.
"""

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Iterable, NamedTuple, Optional

from kgc_study_kit.errors import EmptyInput, InconsistentStatus
from kgc_study_kit.grading.canonical import canonicalize_blank_nodes, graph_isomorphic
from kgc_study_kit.rdf.terms import RdfGraph


class TaskStatus(str, Enum):
    COMPLETED = "C"
    DID_NOT_FINISH = "DNF"
    DID_NOT_START = "DNS"

    @classmethod
    def parse(cls, value: str) -> "TaskStatus":
        try:
            return cls(value.strip().upper())
        except ValueError:
            raise InconsistentStatus(f"unknown task status {value!r} (expected C, DNF or DNS)")


class Accuracy(NamedTuple):
    precision: float
    recall: float
    f_measure: float


@dataclass(frozen=True)
class TaskGrade:
    task_id: str
    status: TaskStatus
    isomorphic: bool
    precision: float
    recall: float
    f_measure: float
    execution_time_seconds: Optional[float]
    matched_count: int
    generated_count: int
    expected_count: int

    @property
    def accuracy(self) -> Accuracy:
        return Accuracy(self.precision, self.recall, self.f_measure)


@dataclass(frozen=True)
class GraphDiff:
    """Triples only in the expected graph (missing) or only in the generated one (spurious)."""
    missing: RdfGraph
    spurious: RdfGraph

    @property
    def empty(self) -> bool:
        return len(self.missing) == 0 and len(self.spurious) == 0


def f_measure(precision, recall) -> float:
    if precision + recall == 0:
        return 0.0
    return float(2 * precision * recall / (precision + recall))


def _from_counts(matched: int, generated: int, expected: int) -> Accuracy:
    p = Fraction(matched, generated) if generated else Fraction(1)
    r = Fraction(matched, expected) if expected else Fraction(1)
    f = 2 * p * r / (p + r) if p + r else Fraction(0)
    return Accuracy(float(p), float(r), float(f))


def overlap_counts(generated: RdfGraph, expected: RdfGraph) -> tuple[int, int, int]:
    """(|G ∩ E|, |G|, |E|) after canonicalization."""
    g = canonicalize_blank_nodes(generated)
    e = canonicalize_blank_nodes(expected)
    return len(g & e), len(g), len(e)


def precision_recall(generated: RdfGraph, expected: RdfGraph) -> Accuracy:
    # An empty generated graph has vacuous precision 1; DNS is zeroed in grade_task
    return _from_counts(*overlap_counts(generated, expected))


def diff_graphs(generated: RdfGraph, expected: RdfGraph) -> GraphDiff:
    g = canonicalize_blank_nodes(generated)
    e = canonicalize_blank_nodes(expected)
    return GraphDiff(missing=e - g, spurious=g - e)


def grade_task(
    task_id: str,
    submission: Optional[RdfGraph],
    expected: RdfGraph,
    status: TaskStatus,
    time: Optional[float] = None,
) -> TaskGrade:
    status = TaskStatus(status)
    if status is TaskStatus.DID_NOT_START:
        if submission is not None:
            raise InconsistentStatus(f"task {task_id}: DNS task carries a submission")
        if time is not None:
            raise InconsistentStatus(f"task {task_id}: DNS task carries an execution time")
        return TaskGrade(task_id, status, False, 0.0, 0.0, 0.0, None, 0, 0, len(expected))

    if submission is None:
        raise InconsistentStatus(f"task {task_id}: status {status.value} but no submission")
    if time is None:
        raise InconsistentStatus(f"task {task_id}: status {status.value} needs an execution time")
    if time < 0:
        raise InconsistentStatus(f"task {task_id}: negative execution time {time}")

    matched, generated, expected_n = overlap_counts(submission, expected)
    isomorphic = graph_isomorphic(submission, expected)
    if isomorphic:
        acc = Accuracy(1.0, 1.0, 1.0)
    else:
        acc = _from_counts(matched, generated, expected_n)
    return TaskGrade(
        task_id=task_id,
        status=status,
        isomorphic=isomorphic,
        precision=acc.precision,
        recall=acc.recall,
        f_measure=acc.f_measure,
        execution_time_seconds=float(time),
        matched_count=matched,
        generated_count=generated,
        expected_count=expected_n,
    )


def global_grade(grades: Iterable[TaskGrade]) -> Accuracy:
    """Micro-average over the summed triple counts of all tasks."""
    grades = list(grades)
    if not grades:
        raise EmptyInput("global grade needs at least one task grade")
    if all(g.status is TaskStatus.DID_NOT_START for g in grades):
        expected = sum(g.expected_count for g in grades)
        return Accuracy(0.0, 0.0 if expected else 1.0, 0.0)
    matched = sum(g.matched_count for g in grades)
    generated = sum(g.generated_count for g in grades)
    expected = sum(g.expected_count for g in grades)
    return _from_counts(matched, generated, expected)


def macro_grade(grades: Iterable[TaskGrade]) -> Accuracy:
    """Unweighted mean of the per-task figures."""
    grades = list(grades)
    if not grades:
        raise EmptyInput("macro grade needs at least one task grade")
    n = len(grades)
    return Accuracy(
        sum(g.precision for g in grades) / n,
        sum(g.recall for g in grades) / n,
        sum(g.f_measure for g in grades) / n,
    )
