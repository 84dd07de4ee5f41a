"""
Tests for the questionnaire scorers (SUS, PSSUQ, NASA-TLX, Raw TLX, WP)
and the participant model.
"""

import random

import pytest

from kgc_study_kit.errors import AllNotApplicable, DuplicatePair, MissingPair, RangeError, SchemaError
from kgc_study_kit.instruments import (
    TLX_FACTORS,
    Motivation,
    PairwiseChoice,
    ParticipantRecord,
    ParticipationMode,
    PssuqResponse,
    Role,
    SusResponse,
    TlxResponse,
    WpResponse,
    score_participant,
    score_pssuq,
    score_raw_tlx,
    score_sus,
    score_tlx,
    score_wp,
    sus_item_contributions,
    tlx_weights,
)

from conftest import instrument_response, ranked_choices


def random_choices(rng: random.Random) -> tuple:
    choices = []
    for i, a in enumerate(TLX_FACTORS):
        for b in TLX_FACTORS[i + 1:]:
            choices.append(PairwiseChoice(a, b) if rng.random() < 0.5 else PairwiseChoice(b, a))
    rng.shuffle(choices)
    return tuple(choices)


# ---------- SUS ----------

def test_sus_midpoint():
    assert score_sus(SusResponse((3,) * 10)) == 50.0


def test_sus_best_case():
    assert score_sus(SusResponse((5, 1) * 5)) == 100.0


def test_sus_worked_example():
    assert score_sus(SusResponse((4, 2) * 5)) == 75.0


def test_sus_contributions_reverse_even_items():
    assert sus_item_contributions(SusResponse((5, 5, 1, 1, 3, 3, 2, 4, 4, 2))) == [4, 0, 0, 4, 2, 2, 1, 1, 3, 3]


def test_sus_monotone_in_odd_and_even_items():
    base = [3] * 10
    up_odd = list(base)
    up_odd[0] = 4
    up_even = list(base)
    up_even[1] = 4
    assert score_sus(SusResponse(up_odd)) > score_sus(SusResponse(base))
    assert score_sus(SusResponse(up_even)) < score_sus(SusResponse(base))


@pytest.mark.parametrize("items", [(3,) * 9, (0,) + (3,) * 9, (6,) + (3,) * 9, (3.5,) + (3,) * 9, (True,) + (3,) * 9])
def test_sus_range_errors(items):
    with pytest.raises(RangeError):
        SusResponse(items)


# ---------- PSSUQ ----------

def test_pssuq_best_and_worst():
    best = score_pssuq(PssuqResponse((1,) * 16))
    worst = score_pssuq(PssuqResponse((7,) * 16))
    assert (best.overall, best.sysuse, best.infoqual, best.interqual) == (1.0, 1.0, 1.0, 1.0)
    assert (worst.overall, worst.sysuse, worst.infoqual, worst.interqual) == (7.0, 7.0, 7.0, 7.0)


def test_pssuq_subscale_example():
    scores = score_pssuq(PssuqResponse((2,) * 6 + (4,) * 6 + (6,) * 3 + (4,)))
    assert scores.sysuse == 2.0
    assert scores.infoqual == 4.0
    assert scores.interqual == 6.0
    assert scores.overall == 3.75
    assert scores.not_applicable == 0


def test_pssuq_not_applicable_excluded_and_counted():
    items = [2] * 16
    items[6] = None
    items[7] = 5
    scores = score_pssuq(PssuqResponse(items))
    assert scores.infoqual == pytest.approx((5 + 2 * 4) / 5)
    assert scores.overall == pytest.approx((5 + 2 * 14) / 15)
    assert scores.not_applicable == 1
    assert scores.as_dict()["notApplicable"] == 1


def test_pssuq_all_not_applicable_subscale():
    items = [3] * 16
    items[12:15] = [None, None, None]
    with pytest.raises(AllNotApplicable) as info:
        score_pssuq(PssuqResponse(items))
    assert "interqual" in str(info.value)


def test_pssuq_item_range():
    with pytest.raises(RangeError):
        PssuqResponse((8,) + (3,) * 15)
    with pytest.raises(RangeError):
        PssuqResponse((3,) * 15)


# ---------- NASA-TLX ----------

def test_tlx_weights_ranked_order():
    assert tlx_weights(ranked_choices()) == (5, 4, 3, 2, 1, 0)


def test_tlx_weights_one_factor_wins_everything():
    order = ("effort",) + tuple(f for f in TLX_FACTORS if f != "effort")
    weights = tlx_weights(ranked_choices(order))
    assert weights[TLX_FACTORS.index("effort")] == 5


def test_tlx_weights_random_sets_sum_to_fifteen():
    rng = random.Random(7)
    for _ in range(10_000):
        choices = random_choices(rng)
        weights = tlx_weights(choices)
        assert sum(weights) == 15
        assert all(0 <= w <= 5 for w in weights)
        shuffled = list(choices)
        rng.shuffle(shuffled)
        assert tlx_weights(shuffled) == weights


def test_tlx_missing_pair():
    with pytest.raises(MissingPair):
        tlx_weights(ranked_choices()[:-1])


def test_tlx_duplicate_pair():
    choices = ranked_choices()
    duplicated = choices[:-1] + (PairwiseChoice(choices[0].loser, choices[0].winner),)
    with pytest.raises(DuplicatePair):
        tlx_weights(duplicated)


def test_pairwise_choice_parse():
    choice = PairwiseChoice.parse(" mental > effort ")
    assert (choice.winner, choice.loser) == ("mental", "effort")
    assert str(choice) == "mental>effort"
    with pytest.raises(RangeError):
        PairwiseChoice.parse("mental,effort")
    with pytest.raises(RangeError):
        PairwiseChoice("mental", "mental")
    with pytest.raises(RangeError):
        PairwiseChoice("mental", "boredom")


def test_tlx_worked_example():
    response = TlxResponse((50, 60, 40, 30, 70, 20), ranked_choices())
    assert score_tlx(response) == pytest.approx(740 / 15, abs=1e-9)
    assert score_raw_tlx(response) == 45.0


def test_tlx_bounds():
    assert score_tlx(TlxResponse((0,) * 6, ranked_choices())) == 0
    assert score_tlx(TlxResponse((100,) * 6, ranked_choices())) == pytest.approx(100)
    assert score_raw_tlx(TlxResponse((100,) * 6)) == 100


def test_tlx_equals_raw_when_ratings_equal():
    rng = random.Random(3)
    for _ in range(50):
        r = rng.uniform(0, 100)
        response = TlxResponse((r,) * 6, random_choices(rng))
        assert score_tlx(response) == pytest.approx(score_raw_tlx(response), abs=1e-9)


@pytest.mark.parametrize("ratings", [(50,) * 5, (101,) + (50,) * 5, (-1,) + (50,) * 5, (float("nan"),) + (50,) * 5])
def test_tlx_rating_errors(ratings):
    with pytest.raises(RangeError):
        TlxResponse(ratings, ranked_choices())


# ---------- Workload Profile ----------

def test_wp_examples():
    assert score_wp(WpResponse((0,) * 8)) == 0
    assert score_wp(WpResponse((100,) * 8)) == 100
    assert score_wp(WpResponse((10, 20, 30, 40, 50, 60, 70, 80))) == 45.0


def test_wp_needs_eight_ratings():
    with pytest.raises(RangeError):
        WpResponse((10,) * 7)


# ---------- participant ----------

def test_score_participant_bundle():
    scores = score_participant(instrument_response())
    assert scores.sus == 75.0
    assert scores.pssuq.overall == 3.0
    assert scores.tlx == pytest.approx(740 / 15)
    assert scores.raw_tlx == 45.0
    assert scores.wp == 45.0
    d = scores.as_dict()
    assert d["tlxWeights"] == [5, 4, 3, 2, 1, 0]
    assert d["rawTlx"] == 45.0


def test_participant_record_coerces_enums():
    p = ParticipantRecord("P01", "A", "phd_student", participation_mode="mandatory", help_count=2)
    assert p.current_role is Role.PHD_STUDENT
    assert p.participation_mode is ParticipationMode.MANDATORY


def test_participant_record_rejects_bad_fields():
    with pytest.raises(SchemaError):
        ParticipantRecord("P01", "A", "astronaut")
    with pytest.raises(SchemaError):
        ParticipantRecord(" ", "A", "other")
    with pytest.raises(RangeError):
        ParticipantRecord("P01", "A", "other", competencies={"rdf": 6})
    with pytest.raises(RangeError):
        ParticipantRecord("P01", "A", "other", help_count=-1)
    with pytest.raises(RangeError):
        Motivation(0, 3, 3)
