"""Shared fixtures: small graphs, questionnaire answers and study directories."""

import shutil

import pytest

from kgc_study_kit.grading.accuracy import TaskStatus
from kgc_study_kit.instruments.participant import Motivation, ParticipantRecord
from kgc_study_kit.instruments.scores import InstrumentResponse
from kgc_study_kit.instruments.usability import PssuqResponse, SusResponse
from kgc_study_kit.instruments.workload import TLX_FACTORS, PairwiseChoice, TlxResponse, WpResponse
from kgc_study_kit.pipeline.synth import synth_study
from kgc_study_kit.rdf.terms import Iri, Literal, RdfGraph, RdfTriple
from kgc_study_kit.study.dataset import CORE_TASKS, GroupDeclaration, NamingPolicy, StudyDataset, TaskDeclaration, TaskResult
from kgc_study_kit.study.fixtures import TASK_DESCRIPTIONS, expected_graphs
from kgc_study_kit.study.loader import write_study

EX = "http://ex.org/"


def ex(local: str) -> Iri:
    return Iri(EX + local)


def ground_graph(n: int) -> RdfGraph:
    """n distinct ground triples."""
    return RdfGraph(RdfTriple(ex(f"s{i}"), ex("p"), Literal(f"v{i}")) for i in range(n))


def ranked_choices(order=TLX_FACTORS) -> tuple:
    """Pairwise choices where earlier factors in `order` always win (weights 5,4,3,2,1,0)."""
    rank = {f: i for i, f in enumerate(order)}
    choices = []
    for i, a in enumerate(TLX_FACTORS):
        for b in TLX_FACTORS[i + 1:]:
            winner, loser = (a, b) if rank[a] < rank[b] else (b, a)
            choices.append(PairwiseChoice(winner, loser))
    return tuple(choices)


def instrument_response(sus=(4, 2) * 5, pssuq=(3,) * 16, tlx=(50, 60, 40, 30, 70, 20), wp=(10, 20, 30, 40, 50, 60, 70, 80)):
    return InstrumentResponse(
        sus=SusResponse(sus),
        pssuq=PssuqResponse(pssuq),
        tlx=TlxResponse(tlx, ranked_choices()),
        wp=WpResponse(wp),
    )


def minimal_dataset(status=TaskStatus.DID_NOT_START) -> StudyDataset:
    """One participant in one group; every task DNS unless `status` says otherwise."""
    graphs = expected_graphs()
    tasks = {
        t: TaskDeclaration(t, TASK_DESCRIPTIONS[t], f"expected/{t}.nt", graphs[t]) for t in CORE_TASKS
    }
    participant = ParticipantRecord(
        participant_id="P01",
        group_label="A",
        current_role="phd_student",
        competencies={"rdf": 3},
        motivation=Motivation(4, 4, 3),
    )
    results = {}
    for t in CORE_TASKS:
        if status is TaskStatus.DID_NOT_START:
            results[("P01", t)] = TaskResult(status)
        else:
            results[("P01", t)] = TaskResult(status, 120.0, f"submissions/P01/{t}.nt", graphs[t])
    return StudyDataset(
        study_id="minimal",
        groups=(GroupDeclaration("A", "Tool A"),),
        tasks=tasks,
        participants=(participant,),
        task_results=results,
        instrument_responses={"P01": instrument_response()},
        timing_method="stopwatch per task",
        time_limit_seconds=3600.0,
        naming_policy=NamingPolicy(),
    )


@pytest.fixture
def minimal_study_dir(tmp_path):
    root = tmp_path / "minimal"
    write_study(minimal_dataset(), root)
    return root


@pytest.fixture(scope="session")
def synth_dataset():
    return synth_study(groups=2, n=6, effect_sizes={"tlx": 1.0}, seed=11)


@pytest.fixture(scope="session")
def _synth_study_template(tmp_path_factory, synth_dataset):
    root = tmp_path_factory.mktemp("template") / "study"
    write_study(synth_dataset, root)
    return root


@pytest.fixture
def synth_study_dir(tmp_path, _synth_study_template):
    """A fresh, writable copy of a valid two-group study directory."""
    root = tmp_path / "study"
    shutil.copytree(_synth_study_template, root)
    return root
