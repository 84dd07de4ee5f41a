"""Tests for the seeded synthetic study generator, including power and size checks."""

import pytest

from kgc_study_kit.errors import InvalidEffectSize, RangeError
from kgc_study_kit.grading.accuracy import TaskStatus
from kgc_study_kit.instruments import score_participant
from kgc_study_kit.pipeline import parse_effects, select_comparison_test, synth_study
from kgc_study_kit.stats import welch_t, wilcoxon_ranksum
from kgc_study_kit.study import CORE_TASKS, validate_anonymity

ALPHA = 0.05
_TESTS = {"welch_t": welch_t, "wilcoxon_ranksum": wilcoxon_ranksum}


def tlx_p_value(ds) -> float:
    """Two-group TLX comparison through the same test selection the report uses."""
    by_group = {label: [] for label in ds.group_labels()}
    for p in ds.participants:
        by_group[p.group_label].append(score_participant(ds.responses_for(p.participant_id)).tlx)
    choice = select_comparison_test(by_group, ALPHA)
    return _TESTS[choice.test_name](*by_group.values()).p_value


def test_same_seed_same_study():
    a = synth_study(groups=3, n=4, effect_sizes={"sus": 0.5}, seed=42)
    b = synth_study(groups=3, n=4, effect_sizes={"sus": 0.5}, seed=42)
    assert a == b
    assert a != synth_study(groups=3, n=4, effect_sizes={"sus": 0.5}, seed=43)


def test_shape():
    ds = synth_study(groups=3, n=4, seed=1)
    assert ds.group_labels() == ["A", "B", "C"]
    assert [p.participant_id for p in ds.participants][:5] == ["P001", "P002", "P003", "P004", "P005"]
    assert len(ds.task_results) == 12 * len(CORE_TASKS)
    assert ds.time_limit_seconds is None
    assert ds.timing_method.startswith("synthetic")
    for result in ds.task_results.values():
        assert result.status in (TaskStatus.COMPLETED, TaskStatus.DID_NOT_FINISH)
        assert result.execution_time_seconds >= 30.0


def test_synthetic_study_is_anonymous():
    assert validate_anonymity(synth_study(groups=2, n=5, seed=9)) == []


def test_positive_effect_raises_the_metric():
    ds = synth_study(groups=2, n=40, effect_sizes={"sus": 3.0}, seed=4)
    means = {}
    for label in ds.group_labels():
        scores = [score_participant(ds.responses_for(p.participant_id)).sus for p in ds.participants_in(label)]
        means[label] = sum(scores) / len(scores)
    assert means["B"] > means["A"] + 10


def test_tlx_effect_is_detected():
    seeds = 500
    rejections = sum(
        tlx_p_value(synth_study(groups=2, n=10, effect_sizes={"tlx": 2.0}, seed=seed)) <= ALPHA
        for seed in range(seeds)
    )
    assert rejections / seeds > 0.90


def test_no_effect_keeps_the_false_positive_rate():
    seeds = 2000
    rejections = sum(tlx_p_value(synth_study(groups=2, n=10, seed=seed)) <= ALPHA for seed in range(seeds))
    assert 0.03 <= rejections / seeds <= 0.07


@pytest.mark.parametrize("effects", [
    {"speed": 1.0},
    {"tlx": 11.0},
    {"tlx": float("nan")},
    {"tlx": "big"},
    {"tlx": True},
])
def test_invalid_effect_sizes(effects):
    with pytest.raises(InvalidEffectSize):
        synth_study(effect_sizes=effects)


@pytest.mark.parametrize("kwargs", [
    {"groups": 0},
    {"groups": 27},
    {"n": 1},
    {"n": 2.5},
    {"seed": "7"},
])
def test_invalid_shape(kwargs):
    with pytest.raises(RangeError):
        synth_study(**kwargs)


def test_parse_effects():
    assert parse_effects("tlx=2, sus=-0.5") == {"tlx": 2.0, "sus": -0.5}
    assert parse_effects("") == {}
    with pytest.raises(InvalidEffectSize):
        parse_effects("tlx")
    with pytest.raises(InvalidEffectSize):
        parse_effects("tlx=high")
