"""
responses.csv codec: one row per participant with the pre-questionnaire,
post-task questionnaires and per-task status/time columns.
"""

import csv
import io
import math
from typing import Optional

from kgc_study_kit.errors import RangeError, SchemaError, StudyKitError
from kgc_study_kit.grading.accuracy import TaskStatus
from kgc_study_kit.instruments.participant import Motivation, ParticipantRecord
from kgc_study_kit.instruments.scores import InstrumentResponse
from kgc_study_kit.instruments.usability import PSSUQ_ITEMS, SUS_ITEMS, PssuqResponse, SusResponse
from kgc_study_kit.instruments.workload import (
    TLX_FACTORS,
    WP_DIMENSIONS,
    PairwiseChoice,
    TlxResponse,
    WpResponse,
)
from kgc_study_kit.study.dataset import CORE_TASKS

RESPONSES_FILE = "responses.csv"
NOT_APPLICABLE = "NA"
TRAINING_SEPARATOR = ";"
COMPETENCY_PREFIX = "competency_"
TLX_PAIR_COUNT = 15

PARTICIPANT_COLUMNS = ["participant_id", "group", "role", "training"]
MOTIVATION_COLUMNS = ["motivation_enjoyment", "motivation_curiosity", "motivation_value"]
MODE_COLUMNS = ["participation_mode", "help_count"]
SUS_COLUMNS = [f"sus_q{i}" for i in range(1, SUS_ITEMS + 1)]
PSSUQ_COLUMNS = [f"pssuq_q{i}" for i in range(1, PSSUQ_ITEMS + 1)]
PSSUQ_COMMENT_COLUMNS = [f"pssuq_c{i}" for i in range(1, PSSUQ_ITEMS + 1)]
TLX_COLUMNS = [f"tlx_{f}" for f in TLX_FACTORS]
TLX_PAIR_COLUMNS = [f"tlx_pair_{i}" for i in range(1, TLX_PAIR_COUNT + 1)]
WP_COLUMNS = [f"wp_d{i}" for i in range(1, len(WP_DIMENSIONS) + 1)]
STATUS_COLUMNS = [f"{t.lower()}_status" for t in CORE_TASKS]
TIME_COLUMNS = [f"{t.lower()}_time" for t in CORE_TASKS]

REQUIRED_COLUMNS = (
    PARTICIPANT_COLUMNS + MOTIVATION_COLUMNS + ["participation_mode"]
    + SUS_COLUMNS + PSSUQ_COLUMNS + TLX_COLUMNS + TLX_PAIR_COLUMNS + WP_COLUMNS
    + STATUS_COLUMNS + TIME_COLUMNS
)


def header(competencies: list[str]) -> list[str]:
    """Column order used when writing responses.csv."""
    return (
        PARTICIPANT_COLUMNS
        + [COMPETENCY_PREFIX + c for c in competencies]
        + MOTIVATION_COLUMNS + MODE_COLUMNS
        + SUS_COLUMNS + PSSUQ_COLUMNS + PSSUQ_COMMENT_COLUMNS
        + TLX_COLUMNS + TLX_PAIR_COLUMNS + WP_COLUMNS
        + STATUS_COLUMNS + TIME_COLUMNS
    )


def format_number(value: float) -> str:
    """Shortest text that reads back as the same float; integers without '.0'."""
    if float(value).is_integer():
        return str(int(value))
    return repr(float(value))


class _RowReader:
    def __init__(self, row: dict, line: int):
        self.row = row
        self.line = line

    def fail(self, column: str, message: str):
        raise SchemaError(f"{RESPONSES_FILE}:{self.line}", column, message)

    def text(self, column: str) -> str:
        value = self.row.get(column)
        return "" if value is None else value.strip()

    def integer(self, column: str) -> int:
        raw = self.text(column)
        try:
            return int(raw)
        except ValueError:
            self.fail(column, f"expected an integer, got {raw!r}")

    def optional_integer(self, column: str) -> Optional[int]:
        return self.integer(column) if self.text(column) else None

    def number(self, column: str) -> float:
        raw = self.text(column)
        try:
            value = float(raw)
        except ValueError:
            self.fail(column, f"expected a number, got {raw!r}")
        if not math.isfinite(value):
            self.fail(column, f"expected a finite number, got {raw!r}")
        return value

    def optional_number(self, column: str) -> Optional[float]:
        return self.number(column) if self.text(column) else None


def competency_columns(fieldnames) -> list[str]:
    return [c[len(COMPETENCY_PREFIX):] for c in fieldnames if c.startswith(COMPETENCY_PREFIX)]


def check_header(fieldnames):
    if not fieldnames:
        raise SchemaError(RESPONSES_FILE, "header", "file is empty")
    missing = [c for c in REQUIRED_COLUMNS if c not in fieldnames]
    if missing:
        raise SchemaError(RESPONSES_FILE, missing[0], f"missing column(s): {', '.join(missing)}")
    extra_tasks = [
        c for c in fieldnames
        if c.endswith(("_status", "_time")) and c not in STATUS_COLUMNS + TIME_COLUMNS
    ]
    if extra_tasks:
        raise SchemaError(RESPONSES_FILE, extra_tasks[0], "column for an undeclared task")


def parse_participant(reader: _RowReader, competencies: list[str]) -> ParticipantRecord:
    training = tuple(
        t.strip() for t in reader.text("training").split(TRAINING_SEPARATOR) if t.strip()
    )
    levels = {}
    for tech in competencies:
        column = COMPETENCY_PREFIX + tech
        if reader.text(column):
            levels[tech] = reader.integer(column)
    return ParticipantRecord(
        participant_id=reader.text("participant_id"),
        group_label=reader.text("group"),
        current_role=reader.text("role"),
        formal_training=training,
        competencies=levels,
        motivation=Motivation(
            enjoyment=reader.integer("motivation_enjoyment"),
            curiosity=reader.integer("motivation_curiosity"),
            value=reader.integer("motivation_value"),
        ),
        participation_mode=reader.text("participation_mode").lower(),
        help_count=reader.optional_integer("help_count"),
    )


def parse_instruments(reader: _RowReader) -> InstrumentResponse:
    pssuq = []
    for column in PSSUQ_COLUMNS:
        pssuq.append(None if reader.text(column).upper() == NOT_APPLICABLE else reader.integer(column))
    comments = tuple(reader.text(c) or None for c in PSSUQ_COMMENT_COLUMNS)
    choices = []
    for column in TLX_PAIR_COLUMNS:
        try:
            choices.append(PairwiseChoice.parse(reader.text(column)))
        except RangeError as e:
            reader.fail(column, str(e))
    return InstrumentResponse(
        sus=SusResponse(tuple(reader.integer(c) for c in SUS_COLUMNS)),
        pssuq=PssuqResponse(tuple(pssuq), comments),
        tlx=TlxResponse(tuple(reader.number(c) for c in TLX_COLUMNS), tuple(choices)),
        wp=WpResponse(tuple(reader.number(c) for c in WP_COLUMNS)),
    )


def parse_task_columns(reader: _RowReader) -> dict:
    """task id -> (status, time) as written in the row."""
    out = {}
    for task_id, status_col, time_col in zip(CORE_TASKS, STATUS_COLUMNS, TIME_COLUMNS):
        raw = reader.text(status_col)
        try:
            status = TaskStatus(raw.upper())
        except ValueError:
            reader.fail(status_col, f"status must be C, DNF or DNS, got {raw!r}")
        time = reader.optional_number(time_col)
        if time is not None and time < 0:
            reader.fail(time_col, f"negative execution time {time}")
        out[task_id] = (status, time)
    return out


def read_responses(text: str) -> list[tuple]:
    """Parse responses.csv into (ParticipantRecord, InstrumentResponse, task columns) rows."""
    if text.startswith("\ufeff"):
        text = text[1:]
    reader = csv.DictReader(io.StringIO(text, newline=""))
    check_header(reader.fieldnames)
    competencies = competency_columns(reader.fieldnames)
    rows = []
    for line, row in enumerate(reader, start=2):
        r = _RowReader(row, line)
        try:
            participant = parse_participant(r, competencies)
            instruments = parse_instruments(r)
        except SchemaError:
            raise
        except StudyKitError as e:
            # range errors from the instrument types, with the row location attached
            raise SchemaError(f"{RESPONSES_FILE}:{line}", type(e).__name__, str(e)) from e
        rows.append((participant, instruments, parse_task_columns(r)))
    return rows


def participant_row(participant, responses, task_results: dict) -> dict:
    """Inverse of read_responses for one participant."""
    row = {
        "participant_id": participant.participant_id,
        "group": participant.group_label,
        "role": participant.current_role.value,
        "training": TRAINING_SEPARATOR.join(participant.formal_training),
        "participation_mode": participant.participation_mode.value,
        "help_count": "" if participant.help_count is None else str(participant.help_count),
    }
    for tech, level in participant.competencies.items():
        row[COMPETENCY_PREFIX + tech] = str(level)
    m = participant.motivation
    row.update(zip(MOTIVATION_COLUMNS, (str(m.enjoyment), str(m.curiosity), str(m.value))))
    row.update(zip(SUS_COLUMNS, (str(v) for v in responses.sus.items)))
    row.update(zip(PSSUQ_COLUMNS, (NOT_APPLICABLE if v is None else str(v) for v in responses.pssuq.items)))
    row.update(zip(PSSUQ_COMMENT_COLUMNS, (c or "" for c in responses.pssuq.comments)))
    row.update(zip(TLX_COLUMNS, (format_number(v) for v in responses.tlx.ratings)))
    row.update(zip(TLX_PAIR_COLUMNS, (str(c) for c in responses.tlx.choices)))
    row.update(zip(WP_COLUMNS, (format_number(v) for v in responses.wp.ratings)))
    for task_id, status_col, time_col in zip(CORE_TASKS, STATUS_COLUMNS, TIME_COLUMNS):
        result = task_results[task_id]
        row[status_col] = result.status.value
        t = result.execution_time_seconds
        row[time_col] = "" if t is None else format_number(t)
    return row


def write_responses(rows: list[dict], competencies: list[str]) -> str:
    out = io.StringIO(newline="")
    writer = csv.DictWriter(out, fieldnames=header(competencies), lineterminator="\n", restval="")
    writer.writeheader()
    for row in rows:
        writer.writerow(row)
    return out.getvalue()
