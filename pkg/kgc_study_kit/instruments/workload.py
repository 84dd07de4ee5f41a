"""
Workload instruments: NASA-TLX (weighted and raw) and the Workload Profile.

TLX weights come from 15 paired comparisons of the six factors; a factor's
weight is how often it was picked, so weights are 0-5 and sum to 15.
WP keeps its own 0-100 scale and is not harmonized with TLX.
"""

import math
from dataclasses import dataclass
from itertools import combinations

from kgc_study_kit.errors import DuplicatePair, MissingPair, RangeError

TLX_FACTORS = ("mental", "physical", "temporal", "performance", "effort", "frustration")
TLX_PAIRS = frozenset(frozenset(p) for p in combinations(TLX_FACTORS, 2))

WP_DIMENSIONS = (
    "perceptual_central",
    "response_selection",
    "spatial_code",
    "verbal_code",
    "visual_input",
    "auditory_input",
    "manual_output",
    "speech_output",
)


def check_rating(value, what: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise RangeError(f"{what} must be a number in 0-100, got {value!r}")
    if not math.isfinite(value) or not 0 <= value <= 100:
        raise RangeError(f"{what} must be in 0-100, got {value!r}")
    return float(value)


@dataclass(frozen=True)
class PairwiseChoice:
    winner: str
    loser: str

    def __post_init__(self):
        for f in (self.winner, self.loser):
            if f not in TLX_FACTORS:
                raise RangeError(f"unknown TLX factor {f!r}")
        if self.winner == self.loser:
            raise RangeError(f"a factor cannot be compared with itself: {self.winner}")

    @classmethod
    def parse(cls, text: str) -> "PairwiseChoice":
        """Parse the `winner>loser` notation used in responses.csv."""
        winner, sep, loser = text.strip().partition(">")
        if not sep:
            raise RangeError(f"pairwise choice must read 'winner>loser', got {text!r}")
        return cls(winner.strip(), loser.strip())

    def __str__(self):
        return f"{self.winner}>{self.loser}"


@dataclass(frozen=True)
class TlxResponse:
    ratings: tuple
    choices: tuple = ()

    def __post_init__(self):
        ratings = tuple(self.ratings)
        if len(ratings) != len(TLX_FACTORS):
            raise RangeError(f"TLX needs {len(TLX_FACTORS)} ratings, got {len(ratings)}")
        ratings = tuple(check_rating(v, f"TLX {f}") for v, f in zip(ratings, TLX_FACTORS))
        object.__setattr__(self, "ratings", ratings)
        object.__setattr__(self, "choices", tuple(self.choices))


@dataclass(frozen=True)
class WpResponse:
    ratings: tuple

    def __post_init__(self):
        ratings = tuple(self.ratings)
        if len(ratings) != len(WP_DIMENSIONS):
            raise RangeError(f"WP needs {len(WP_DIMENSIONS)} ratings, got {len(ratings)}")
        ratings = tuple(check_rating(v, f"WP {d}") for v, d in zip(ratings, WP_DIMENSIONS))
        object.__setattr__(self, "ratings", ratings)


def tlx_weights(choices) -> tuple:
    """Tally pairwise winners into six weights, in TLX_FACTORS order."""
    seen = set()
    tally = dict.fromkeys(TLX_FACTORS, 0)
    for choice in choices:
        pair = frozenset((choice.winner, choice.loser))
        if pair in seen:
            raise DuplicatePair(f"pair {sorted(pair)} answered more than once")
        seen.add(pair)
        tally[choice.winner] += 1
    missing = TLX_PAIRS - seen
    if missing:
        names = ", ".join("/".join(sorted(p)) for p in sorted(missing, key=sorted))
        raise MissingPair(f"{len(missing)} TLX pair(s) unanswered: {names}")
    return tuple(tally[f] for f in TLX_FACTORS)


def score_tlx(response: TlxResponse) -> float:
    weights = tlx_weights(response.choices)
    return sum(d * w for d, w in zip(response.ratings, weights)) / 15


def score_raw_tlx(response: TlxResponse) -> float:
    return sum(response.ratings) / len(response.ratings)


def score_wp(response: WpResponse) -> float:
    return sum(response.ratings) / len(response.ratings)
