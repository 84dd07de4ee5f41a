"""
Study directory reader and writer.

Layout:
    study.json
    responses.csv
    submissions/<participantId>/<taskId>.nt | .ttl
    <expected graph files named in study.json>

Loading is eager: every declaration, row and graph is validated and parsed,
so later stages cannot run into malformed input.
"""

import json
from pathlib import Path, PurePosixPath

from kgc_study_kit.errors import (
    InconsistentStatus,
    MissingSubmission,
    SchemaError,
    StudyIOError,
    ValidationError,
)
from kgc_study_kit.grading.accuracy import TaskStatus
from kgc_study_kit.rdf import parse_graph_file, serialize_ntriples
from kgc_study_kit.storage.storage import ArtifactStore
from kgc_study_kit.study.dataset import (
    CORE_TASKS,
    STUDY_FORMAT_VERSION,
    VARIANT_TASKS,
    GroupDeclaration,
    NamingPolicy,
    StudyDataset,
    TaskDeclaration,
    TaskResult,
)
from kgc_study_kit.study.responses import (
    RESPONSES_FILE,
    participant_row,
    read_responses,
    write_responses,
)
from kgc_study_kit.utils.logger import setup_logger

logger = setup_logger()

STUDY_FILE = "study.json"
SUBMISSIONS_DIR = "submissions"
GRAPH_SUFFIXES = (".nt", ".ttl")

_STUDY_KEYS = {
    "formatVersion", "studyId", "groups", "tasks", "timeLimitSeconds",
    "timingMethod", "variantNote", "namingPolicy", "missingSubmissions",
}


def _read_text(path: Path) -> str:
    try:
        return path.read_text(encoding="utf-8")
    except FileNotFoundError as e:
        raise SchemaError(str(path.name), "file", "required file is missing") from e
    except (OSError, UnicodeDecodeError) as e:
        raise StudyIOError(f"cannot read {path}: {e}") from e


def _require(data: dict, key: str, kind, where: str):
    if key not in data:
        raise SchemaError(STUDY_FILE, where + key, "required field is missing")
    value = data[key]
    if not isinstance(value, kind) or isinstance(value, bool):
        raise SchemaError(STUDY_FILE, where + key, f"expected {getattr(kind, '__name__', kind)}")
    return value


def _graph_path(root: Path, rel: str, field: str) -> Path:
    if not isinstance(rel, str) or not rel:
        raise SchemaError(STUDY_FILE, field, "expected a relative path")
    p = PurePosixPath(rel)
    if p.is_absolute() or ".." in p.parts:
        raise SchemaError(STUDY_FILE, field, f"path must stay inside the study directory: {rel}")
    if p.suffix.lower() not in GRAPH_SUFFIXES:
        raise SchemaError(STUDY_FILE, field, f"graph files must be .nt or .ttl: {rel}")
    path = root / p
    if not path.is_file():
        raise SchemaError(STUDY_FILE, field, f"file not found: {rel}")
    return path


def _task_declaration(root: Path, data: dict, where: str, allowed: tuple) -> TaskDeclaration:
    if not isinstance(data, dict):
        raise SchemaError(STUDY_FILE, where, "expected an object")
    task_id = _require(data, "taskId", str, where)
    if task_id not in allowed:
        raise SchemaError(STUDY_FILE, where + "taskId", f"undeclared task id {task_id!r} (allowed: {', '.join(allowed)})")
    description = _require(data, "description", str, where)
    rel = _require(data, "expectedGraph", str, where)
    graph = parse_graph_file(_graph_path(root, rel, where + "expectedGraph"))
    return TaskDeclaration(task_id, description, rel, graph)


def _parse_study_json(root: Path, data) -> dict:
    if not isinstance(data, dict):
        raise SchemaError(STUDY_FILE, "$", "expected a JSON object")
    unknown = sorted(set(data) - _STUDY_KEYS)
    if unknown:
        raise SchemaError(STUDY_FILE, unknown[0], "unknown field")
    version = _require(data, "formatVersion", str, "")
    if version != STUDY_FORMAT_VERSION:
        raise SchemaError(STUDY_FILE, "formatVersion", f"expected {STUDY_FORMAT_VERSION}, got {version!r}")

    tasks = {}
    for i, raw in enumerate(_require(data, "tasks", list, "")):
        decl = _task_declaration(root, raw, f"tasks[{i}].", CORE_TASKS)
        if decl.task_id in tasks:
            raise SchemaError(STUDY_FILE, f"tasks[{i}].taskId", f"task {decl.task_id} declared twice")
        tasks[decl.task_id] = decl
    missing = [t for t in CORE_TASKS if t not in tasks]
    if missing:
        raise SchemaError(STUDY_FILE, "tasks", f"core task(s) not declared: {', '.join(missing)}")
    tasks = {t: tasks[t] for t in CORE_TASKS}

    groups = []
    for i, raw in enumerate(_require(data, "groups", list, "")):
        where = f"groups[{i}]."
        if not isinstance(raw, dict):
            raise SchemaError(STUDY_FILE, where, "expected an object")
        label = _require(raw, "groupLabel", str, where)
        tool = _require(raw, "toolOrLanguageName", str, where)
        variants = {}
        for j, v in enumerate(raw.get("variantTasks", [])):
            decl = _task_declaration(root, v, f"{where}variantTasks[{j}].", VARIANT_TASKS)
            if decl.task_id in variants:
                raise SchemaError(STUDY_FILE, f"{where}variantTasks[{j}]", f"variant {decl.task_id} declared twice")
            variants[decl.task_id] = decl
        if any(g.group_label == label for g in groups):
            raise SchemaError(STUDY_FILE, where + "groupLabel", f"duplicate group {label!r}")
        groups.append(GroupDeclaration(label, tool, variants))
    if not groups:
        raise SchemaError(STUDY_FILE, "groups", "at least one group is required")

    limit = data.get("timeLimitSeconds")
    if limit is not None and (isinstance(limit, bool) or not isinstance(limit, (int, float)) or limit <= 0):
        raise SchemaError(STUDY_FILE, "timeLimitSeconds", "expected a positive number")

    timing = _require(data, "timingMethod", str, "")
    if not timing.strip():
        raise SchemaError(STUDY_FILE, "timingMethod", "must describe how execution time was measured")

    policy = data.get("namingPolicy")
    if policy is not None and not isinstance(policy, dict):
        raise SchemaError(STUDY_FILE, "namingPolicy", "expected an object")

    missing_submissions = []
    for i, entry in enumerate(data.get("missingSubmissions", [])):
        if not isinstance(entry, dict):
            raise SchemaError(STUDY_FILE, f"missingSubmissions[{i}]", "expected an object")
        missing_submissions.append((
            _require(entry, "participantId", str, f"missingSubmissions[{i}]."),
            _require(entry, "taskId", str, f"missingSubmissions[{i}]."),
        ))

    return {
        "study_id": _require(data, "studyId", str, ""),
        "groups": tuple(groups),
        "tasks": tasks,
        "timing_method": timing,
        "time_limit_seconds": None if limit is None else float(limit),
        "variant_note": data.get("variantNote"),
        "naming_policy": NamingPolicy.from_dict(policy) if policy is not None else None,
        "missing_submissions": tuple(missing_submissions),
    }


def _submission_files(root: Path, participant_ids: set) -> dict:
    """(participant, task) -> relative path, rejecting anything undeclared."""
    found = {}
    base = root / SUBMISSIONS_DIR
    if not base.is_dir():
        return found
    for pdir in sorted(base.iterdir()):
        if not pdir.is_dir():
            continue
        if pdir.name not in participant_ids:
            raise SchemaError(f"{SUBMISSIONS_DIR}/{pdir.name}", "participantId", "no such participant in responses.csv")
        for f in sorted(pdir.iterdir()):
            if f.suffix.lower() not in GRAPH_SUFFIXES or not f.is_file():
                continue
            task_id = f.stem
            rel = f"{SUBMISSIONS_DIR}/{pdir.name}/{f.name}"
            if task_id not in CORE_TASKS:
                raise SchemaError(rel, "taskId", f"undeclared task id {task_id!r}")
            key = (pdir.name, task_id)
            if key in found:
                raise SchemaError(rel, "taskId", "more than one submission file for this task")
            found[key] = rel
    return found


def load_study(root) -> StudyDataset:
    root = Path(root)
    if not root.is_dir():
        raise StudyIOError(f"study directory not found: {root}")
    try:
        study = json.loads(_read_text(root / STUDY_FILE))
    except json.JSONDecodeError as e:
        raise SchemaError(STUDY_FILE, "$", f"invalid JSON at line {e.lineno}: {e.msg}") from e
    header = _parse_study_json(root, study)
    labels = {g.group_label for g in header["groups"]}

    rows = read_responses(_read_text(root / RESPONSES_FILE))
    participants, instruments, columns = [], {}, {}
    for participant, responses, tasks in rows:
        pid = participant.participant_id
        if pid in instruments:
            raise SchemaError(RESPONSES_FILE, "participant_id", f"duplicate participant {pid!r}")
        if participant.group_label not in labels:
            raise SchemaError(RESPONSES_FILE, "group", f"participant {pid}: undeclared group {participant.group_label!r}")
        participants.append(participant)
        instruments[pid] = responses
        columns[pid] = tasks

    files = _submission_files(root, set(instruments))
    allowed_missing = set(header["missing_submissions"])
    limit = header["time_limit_seconds"]
    results = {}
    for participant in participants:
        pid = participant.participant_id
        for task_id in CORE_TASKS:
            status, time = columns[pid][task_id]
            rel = files.get((pid, task_id))
            if status is TaskStatus.DID_NOT_START:
                if rel is not None:
                    raise InconsistentStatus(f"participant {pid}, task {task_id}: DNS but {rel} exists")
                if time is not None:
                    raise InconsistentStatus(f"participant {pid}, task {task_id}: DNS with an execution time")
                results[(pid, task_id)] = TaskResult(status)
                continue
            if rel is None:
                if (pid, task_id) in allowed_missing:
                    logger.warning(f"Participant {pid}, task {task_id}: submission missing, recorded as DNS")
                    results[(pid, task_id)] = TaskResult(TaskStatus.DID_NOT_START)
                    continue
                raise MissingSubmission(pid, task_id)
            if time is None:
                raise SchemaError(RESPONSES_FILE, f"{task_id.lower()}_time", f"participant {pid}: status {status.value} needs a time")
            if status is TaskStatus.COMPLETED and limit is not None and time > limit:
                raise SchemaError(
                    RESPONSES_FILE, f"{task_id.lower()}_time",
                    f"participant {pid}: {time}s exceeds the time limit of {limit}s",
                )
            try:
                graph = parse_graph_file(root / rel)
            except ValidationError:
                logger.error(f"Cannot parse submission {rel}")
                raise
            results[(pid, task_id)] = TaskResult(status, time, rel, graph)

    logger.info(f"Loaded study {header['study_id']}: {len(participants)} participant(s), {len(results)} task result(s)")
    return StudyDataset(
        participants=tuple(participants),
        task_results=results,
        instrument_responses=instruments,
        root=root,
        **header,
    )


def study_to_dict(ds: StudyDataset) -> dict:
    """study.json view of a dataset (expected graphs are referenced by path)."""
    def task(decl: TaskDeclaration) -> dict:
        return {"taskId": decl.task_id, "description": decl.description, "expectedGraph": decl.expected_graph_path}

    out = {"formatVersion": STUDY_FORMAT_VERSION, "studyId": ds.study_id, "groups": []}
    for g in ds.groups:
        entry = {"groupLabel": g.group_label, "toolOrLanguageName": g.tool_or_language_name}
        if g.variant_tasks:
            entry["variantTasks"] = [task(g.variant_tasks[t]) for t in VARIANT_TASKS if t in g.variant_tasks]
        out["groups"].append(entry)
    out["tasks"] = [task(ds.tasks[t]) for t in CORE_TASKS]
    if ds.time_limit_seconds is not None:
        out["timeLimitSeconds"] = ds.time_limit_seconds
    out["timingMethod"] = ds.timing_method
    if ds.variant_note is not None:
        out["variantNote"] = ds.variant_note
    if ds.naming_policy is not None:
        out["namingPolicy"] = ds.naming_policy.as_dict()
    if ds.missing_submissions:
        out["missingSubmissions"] = [{"participantId": p, "taskId": t} for p, t in ds.missing_submissions]
    return out


def write_study(ds: StudyDataset, root) -> ArtifactStore:
    """
    Write `ds` as a study directory. Graphs are written as sorted N-Triples
    (also valid Turtle) at their original relative paths.
    """
    store = ArtifactStore(root)
    store.save_json(STUDY_FILE, study_to_dict(ds))

    declarations = list(ds.tasks.values())
    for g in ds.groups:
        declarations += list(g.variant_tasks.values())
    for decl in declarations:
        store.save_text(decl.expected_graph_path, serialize_ntriples(decl.expected_graph))

    competencies = []
    rows = []
    for participant in ds.participants:
        for tech in participant.competencies:
            if tech not in competencies:
                competencies.append(tech)
        pid = participant.participant_id
        per_task = {t: ds.task_results[(pid, t)] for t in CORE_TASKS}
        rows.append(participant_row(participant, ds.instrument_responses[pid], per_task))
        for task_id, result in per_task.items():
            if result.submission is not None:
                path = result.submission_path or f"{SUBMISSIONS_DIR}/{pid}/{task_id}.nt"
                store.save_text(path, serialize_ntriples(result.submission))
    store.save_text(RESPONSES_FILE, write_responses(rows, competencies))
    logger.info(f"Wrote study {ds.study_id} to {store.base_path}")
    return store
