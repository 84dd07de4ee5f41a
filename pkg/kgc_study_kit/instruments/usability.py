"""
Usability questionnaires: SUS (10 items, 1-5) and the 16-item PSSUQ (1-7, NA allowed).

PSSUQ is lower-is-better: 1 is strongest agreement with the positive
statements. Not-applicable answers are left out of every mean and counted.
"""

from dataclasses import dataclass, field
from typing import Optional

from kgc_study_kit.errors import AllNotApplicable, RangeError
from kgc_study_kit.instruments.participant import check_likert

SUS_ITEMS = 10
PSSUQ_ITEMS = 16

# 1-based inclusive item ranges of the 16-item instrument
PSSUQ_SUBSCALES = {
    "overall": (1, 16),
    "sysuse": (1, 6),
    "infoqual": (7, 12),
    "interqual": (13, 15),
}


@dataclass(frozen=True)
class SusResponse:
    items: tuple

    def __post_init__(self):
        items = tuple(self.items)
        if len(items) != SUS_ITEMS:
            raise RangeError(f"SUS needs exactly {SUS_ITEMS} items, got {len(items)}")
        for i, v in enumerate(items, start=1):
            check_likert(v, f"SUS item {i}")
        object.__setattr__(self, "items", items)


@dataclass(frozen=True)
class PssuqResponse:
    items: tuple  # int 1-7 or None for not applicable
    comments: tuple = field(default=())

    def __post_init__(self):
        items = tuple(self.items)
        if len(items) != PSSUQ_ITEMS:
            raise RangeError(f"PSSUQ needs exactly {PSSUQ_ITEMS} items, got {len(items)}")
        for i, v in enumerate(items, start=1):
            if v is not None:
                check_likert(v, f"PSSUQ item {i}", 1, 7)
        comments = tuple(self.comments) or (None,) * PSSUQ_ITEMS
        if len(comments) != PSSUQ_ITEMS:
            raise RangeError(f"PSSUQ carries one comment slot per item, got {len(comments)}")
        object.__setattr__(self, "items", items)
        object.__setattr__(self, "comments", comments)


@dataclass(frozen=True)
class PssuqScores:
    overall: float
    sysuse: float
    infoqual: float
    interqual: float
    not_applicable: int

    def as_dict(self) -> dict:
        return {
            "overall": self.overall,
            "sysuse": self.sysuse,
            "infoqual": self.infoqual,
            "interqual": self.interqual,
            "notApplicable": self.not_applicable,
        }


def sus_item_contributions(response: SusResponse) -> list[int]:
    """Per-item 0-4 contributions; even (negatively worded) items are reverse-coded."""
    return [
        (v - 1) if i % 2 == 1 else (5 - v)
        for i, v in enumerate(response.items, start=1)
    ]


def score_sus(response: SusResponse) -> float:
    return 2.5 * sum(sus_item_contributions(response))


def _subscale_mean(items: tuple, name: str) -> float:
    low, high = PSSUQ_SUBSCALES[name]
    answered = [v for v in items[low - 1:high] if v is not None]
    if not answered:
        raise AllNotApplicable(name)
    return sum(answered) / len(answered)


def score_pssuq(response: PssuqResponse) -> PssuqScores:
    items = response.items
    return PssuqScores(
        overall=_subscale_mean(items, "overall"),
        sysuse=_subscale_mean(items, "sysuse"),
        infoqual=_subscale_mean(items, "infoqual"),
        interqual=_subscale_mean(items, "interqual"),
        not_applicable=sum(1 for v in items if v is None),
    )


def pssuq_subscale_items(response: PssuqResponse, name: str) -> list[Optional[int]]:
    low, high = PSSUQ_SUBSCALES[name]
    return list(response.items[low - 1:high])
