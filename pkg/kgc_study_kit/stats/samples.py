"""
Sample validation, ranking and descriptive statistics shared by the battery.
"""

import math
from dataclasses import dataclass, field
from typing import Optional, Union

import numpy as np

from kgc_study_kit.errors import EmptyInput, RangeError


@dataclass
class TestResult:
    test_name: str
    statistic: float
    p_value: float
    df: Optional[Union[float, tuple]] = None
    details: dict = field(default_factory=dict)
    notes: list = field(default_factory=list)

    __test__ = False  # not a pytest class

    def __post_init__(self):
        if not 0.0 <= self.p_value <= 1.0:
            raise RangeError(f"{self.test_name}: p-value {self.p_value} outside [0, 1]")

    def as_dict(self) -> dict:
        df = list(self.df) if isinstance(self.df, tuple) else self.df
        out = {
            "test": self.test_name,
            # JSON has no infinity
            "statistic": float(self.statistic) if math.isfinite(self.statistic) else None,
            "pValue": float(self.p_value),
            "df": df,
        }
        if self.details:
            out["details"] = dict(self.details)
        if self.notes:
            out["notes"] = list(self.notes)
        return out


def as_sample(values, what: str = "sample") -> np.ndarray:
    """Validate a 1-D sequence of finite reals and return it as a float array."""
    try:
        arr = np.asarray(values, dtype=float)
    except (TypeError, ValueError) as e:
        raise RangeError(f"{what} must contain numbers: {e}")
    if arr.ndim != 1:
        raise RangeError(f"{what} must be one-dimensional, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise RangeError(f"{what} contains NaN or infinite values")
    return arr


def midranks(values) -> np.ndarray:
    """Ranks 1..n with ties sharing the average of the positions they span."""
    x = as_sample(values)
    n = len(x)
    order = np.argsort(x, kind="mergesort")
    ordered = x[order]
    ranks = np.empty(n, dtype=float)
    i = 0
    while i < n:
        j = i
        while j + 1 < n and ordered[j + 1] == ordered[i]:
            j += 1
        ranks[order[i:j + 1]] = (i + j) / 2.0 + 1.0
        i = j + 1
    return ranks


def tie_counts(values) -> np.ndarray:
    """Sizes of the groups of equal values (singletons included)."""
    _, counts = np.unique(as_sample(values), return_counts=True)
    return counts


def tie_term(values) -> float:
    """Σ (t³ - t) over tie groups."""
    t = tie_counts(values).astype(float)
    return float(np.sum(t ** 3 - t))


def describe(values) -> dict:
    x = as_sample(values)
    if len(x) == 0:
        raise EmptyInput("cannot describe an empty sample")
    q1, median, q3 = np.percentile(x, [25, 50, 75])
    return {
        "n": int(len(x)),
        "mean": float(np.mean(x)),
        "sd": float(np.std(x, ddof=1)) if len(x) > 1 else None,
        "median": float(median),
        "q1": float(q1),
        "q3": float(q3),
        "iqr": float(q3 - q1),
        "min": float(np.min(x)),
        "max": float(np.max(x)),
    }
