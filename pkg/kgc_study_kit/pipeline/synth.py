"""
Seeded synthetic studies for exercising the pipeline end to end.

Every metric is driven by a standard-normal latent per participant. An
effect size d for a metric moves that latent by d standard deviations per
group step (group A is the baseline, group B is shifted by d, group C by 2d
and so on), so a positive d raises the metric on its own scale. The same
seed and arguments always give the same dataset.
"""

import math
import string
from itertools import combinations

import numpy as np

from kgc_study_kit.errors import InvalidEffectSize, RangeError
from kgc_study_kit.grading.accuracy import TaskStatus
from kgc_study_kit.instruments.participant import Motivation, ParticipantRecord, ParticipationMode, Role
from kgc_study_kit.instruments.scores import InstrumentResponse
from kgc_study_kit.instruments.usability import PSSUQ_ITEMS, PSSUQ_SUBSCALES, PssuqResponse, SusResponse
from kgc_study_kit.instruments.workload import (
    TLX_FACTORS,
    WP_DIMENSIONS,
    PairwiseChoice,
    TlxResponse,
    WpResponse,
)
from kgc_study_kit.pipeline.config import METRICS
from kgc_study_kit.rdf.ntriples import triple_to_ntriples
from kgc_study_kit.rdf.terms import Iri, Literal, RdfGraph, RdfTriple
from kgc_study_kit.study.dataset import CORE_TASKS, GroupDeclaration, NamingPolicy, StudyDataset, TaskDeclaration, TaskResult
from kgc_study_kit.study.fixtures import TASK_DESCRIPTIONS, expected_graphs
from kgc_study_kit.utils.logger import setup_logger

logger = setup_logger()

MAX_EFFECT_SIZE = 10.0

# share of the total working time spent on each task
TASK_TIME_SHARES = (0.15, 0.2, 0.1, 0.3, 0.25)
MEAN_TOTAL_SECONDS = 3000.0
SD_TOTAL_SECONDS = 600.0
DNF_PROBABILITY = 0.05

COMPETENCIES = ("rdf", "sparql", "rml")
_ROLES = list(Role)


def check_effect_sizes(effect_sizes) -> dict:
    effects = dict(effect_sizes or {})
    for metric, d in effects.items():
        if metric not in METRICS:
            raise InvalidEffectSize(f"unknown metric {metric!r}; expected one of {', '.join(METRICS)}")
        if isinstance(d, bool) or not isinstance(d, (int, float)) or not math.isfinite(d):
            raise InvalidEffectSize(f"effect size for {metric} must be a finite number, got {d!r}")
        if abs(d) > MAX_EFFECT_SIZE:
            raise InvalidEffectSize(f"effect size for {metric} must satisfy |d| <= {MAX_EFFECT_SIZE}, got {d}")
    return {m: float(d) for m, d in effects.items()}


def parse_effects(text: str) -> dict:
    """Parse the CLI notation `metric=d[,metric=d...]`."""
    effects = {}
    for part in filter(None, (p.strip() for p in (text or "").split(","))):
        metric, sep, value = part.partition("=")
        if not sep:
            raise InvalidEffectSize(f"effect must read metric=d, got {part!r}")
        try:
            effects[metric.strip()] = float(value)
        except ValueError:
            raise InvalidEffectSize(f"effect size for {metric.strip()} is not a number: {value!r}")
    return check_effect_sizes(effects)


class _Generator:
    def __init__(self, effects: dict, seed: int):
        self.effects = effects
        self.rng = np.random.default_rng(seed)
        self.graphs = expected_graphs(NamingPolicy())
        # stable triple order so sampling depends on the seed only
        self.ordered = {
            tid: sorted(g, key=triple_to_ntriples) for tid, g in self.graphs.items()
        }

    def latent(self, step: int, *metrics: str) -> float:
        shift = sum(self.effects.get(m, 0.0) for m in metrics)
        return float(self.rng.standard_normal()) + shift * step

    # ---------- questionnaires ----------

    def likert(self, centre: float, low: int, high: int, noise: float = 0.5) -> int:
        value = round(centre + noise * float(self.rng.standard_normal()))
        return int(min(high, max(low, value)))

    def rating(self, centre: float) -> float:
        value = round(centre + 8.0 * float(self.rng.standard_normal()))
        return float(min(100, max(0, value)))

    def sus(self, step: int) -> SusResponse:
        u = self.latent(step, "sus")
        items = []
        for i in range(1, 11):
            # odd items are positive statements, even items negative ones
            centre = 3.5 + 0.9 * u if i % 2 == 1 else 2.5 - 0.9 * u
            items.append(self.likert(centre, 1, 5))
        return SusResponse(tuple(items))

    def pssuq(self, step: int) -> PssuqResponse:
        u_overall = self.latent(step, "pssuqOverall")
        shifts = {
            name: self.effects.get(f"pssuq{name.capitalize()}", 0.0) * step
            for name in ("sysuse", "infoqual", "interqual")
        }
        items = []
        for i in range(1, PSSUQ_ITEMS + 1):
            u = u_overall
            for name, shift in shifts.items():
                low, high = PSSUQ_SUBSCALES[name]
                if low <= i <= high:
                    u += shift
            items.append(self.likert(3.0 + 1.2 * u, 1, 7, noise=0.6))
        # occasionally one information-quality item is not applicable
        if self.rng.random() < 0.1:
            low, high = PSSUQ_SUBSCALES["infoqual"]
            items[int(self.rng.integers(low - 1, high))] = None
        return PssuqResponse(tuple(items))

    def tlx(self, step: int) -> TlxResponse:
        u = self.latent(step, "tlx", "rawTlx")
        ratings = tuple(self.rating(50.0 + 15.0 * u) for _ in TLX_FACTORS)
        choices = []
        for a, b in combinations(TLX_FACTORS, 2):
            choices.append(PairwiseChoice(a, b) if self.rng.random() < 0.5 else PairwiseChoice(b, a))
        return TlxResponse(ratings, tuple(choices))

    def wp(self, step: int) -> WpResponse:
        u = self.latent(step, "wp")
        return WpResponse(tuple(self.rating(50.0 + 15.0 * u) for _ in WP_DIMENSIONS))

    def participant(self, pid: str, label: str) -> ParticipantRecord:
        rng = self.rng
        return ParticipantRecord(
            participant_id=pid,
            group_label=label,
            current_role=_ROLES[int(rng.integers(len(_ROLES)))],
            formal_training=("semantic web course",) if rng.random() < 0.5 else (),
            competencies={c: int(rng.integers(1, 6)) for c in COMPETENCIES},
            motivation=Motivation(*(int(v) for v in rng.integers(1, 6, size=3))),
            participation_mode=ParticipationMode.VOLUNTARY,
            help_count=int(rng.integers(0, 3)),
        )

    # ---------- tasks ----------

    def submission(self, task_id: str, recall_u: float, precision_u: float, partial: bool) -> RdfGraph:
        triples = self.ordered[task_id]
        n = len(triples)
        drop = min(0.9, max(0.0, 0.15 - 0.08 * recall_u))
        if partial:
            drop = max(drop, 0.5)
        keep_mask = self.rng.random(n) >= drop
        kept = [t for t, keep in zip(triples, keep_mask) if keep]
        spurious_share = min(1.0, max(0.0, 0.1 - 0.05 * precision_u))
        extra = int(round(spurious_share * n))
        for i in range(extra):
            # subject-local noise such as a stray label
            subject = triples[int(self.rng.integers(n))].subject
            kept.append(RdfTriple(subject, Iri("http://example.com/note"), Literal(f"extra {task_id} {i}")))
        return RdfGraph(kept)

    def task_results(self, pid: str, step: int) -> dict:
        recall_u = self.latent(step, "recall", "fMeasure")
        precision_u = self.latent(step, "precision", "fMeasure")
        time_u = self.latent(step, "executionTime")
        total = max(300.0, MEAN_TOTAL_SECONDS + SD_TOTAL_SECONDS * time_u)
        results = {}
        for task_id, share in zip(CORE_TASKS, TASK_TIME_SHARES):
            jitter = 1.0 + 0.05 * float(self.rng.standard_normal())
            seconds = round(max(30.0, total * share * jitter), 1)
            dnf = task_id in ("T4", "T5") and self.rng.random() < DNF_PROBABILITY
            status = TaskStatus.DID_NOT_FINISH if dnf else TaskStatus.COMPLETED
            graph = self.submission(task_id, recall_u, precision_u, partial=dnf)
            results[(pid, task_id)] = TaskResult(status, seconds, f"submissions/{pid}/{task_id}.nt", graph)
        return results


def synth_study(groups: int = 2, n: int = 10, effect_sizes=None, seed: int = 0) -> StudyDataset:
    """
    Draw a synthetic study with `groups` groups of `n` participants each.

    `effect_sizes` maps metric names to Cohen's d applied per group step.
    """
    effects = check_effect_sizes(effect_sizes)
    if isinstance(groups, bool) or not isinstance(groups, int) or not 1 <= groups <= 26:
        raise RangeError(f"groups must be an integer in 1-26, got {groups!r}")
    if isinstance(n, bool) or not isinstance(n, int) or n < 2:
        raise RangeError(f"n must be an integer >= 2, got {n!r}")
    if isinstance(seed, bool) or not isinstance(seed, int):
        raise RangeError(f"seed must be an integer, got {seed!r}")

    gen = _Generator(effects, seed)
    labels = list(string.ascii_uppercase[:groups])
    declarations = tuple(GroupDeclaration(label, f"Tool {label}") for label in labels)
    tasks = {
        tid: TaskDeclaration(tid, TASK_DESCRIPTIONS[tid], f"expected/{tid}.nt", gen.graphs[tid])
        for tid in CORE_TASKS
    }

    participants, results, responses = [], {}, {}
    counter = 0
    for step, label in enumerate(labels):
        for _ in range(n):
            counter += 1
            pid = f"P{counter:03d}"
            participants.append(gen.participant(pid, label))
            results.update(gen.task_results(pid, step))
            responses[pid] = InstrumentResponse(
                sus=gen.sus(step), pssuq=gen.pssuq(step), tlx=gen.tlx(step), wp=gen.wp(step)
            )

    logger.info(f"Synthesised study: {groups} group(s) x {n} participants, seed {seed}, effects {effects}")
    return StudyDataset(
        study_id=f"synthetic-{seed}",
        groups=declarations,
        tasks=tasks,
        participants=tuple(participants),
        task_results=results,
        instrument_responses=responses,
        timing_method="synthetic: total time drawn per participant, split over tasks",
        time_limit_seconds=None,
        variant_note=None,
        naming_policy=NamingPolicy(),
    )
