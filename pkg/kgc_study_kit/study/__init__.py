# Study ingestion, validation and fixtures (demo study: kgc_study_kit.study.demo)
from .anonymity import AnonymityWarning, validate_anonymity
from .dataset import (
    CORE_TASKS,
    GroupDeclaration,
    NamingPolicy,
    StudyDataset,
    TaskDeclaration,
    TaskResult,
)
from .fixtures import TaskFixture, build_fixture_bundle, expected_graphs
from .loader import load_study, study_to_dict, write_study

__all__ = [
    "AnonymityWarning",
    "CORE_TASKS",
    "GroupDeclaration",
    "NamingPolicy",
    "StudyDataset",
    "TaskDeclaration",
    "TaskFixture",
    "TaskResult",
    "build_fixture_bundle",
    "expected_graphs",
    "load_study",
    "study_to_dict",
    "validate_anonymity",
    "write_study",
]
