import math

import numpy as np

from kgc_study_kit.errors import ConstantInput, LengthMismatch, SampleTooSmall
from kgc_study_kit.stats.distributions import t_two_sided
from kgc_study_kit.stats.samples import TestResult, as_sample, midranks


def _paired(x, y, test: str) -> tuple[np.ndarray, np.ndarray]:
    x = as_sample(x, f"{test} x")
    y = as_sample(y, f"{test} y")
    if len(x) != len(y):
        raise LengthMismatch(f"{test}: x has {len(x)} values, y has {len(y)}")
    if len(x) < 3:
        raise SampleTooSmall(f"{test} needs n >= 3, got {len(x)}")
    if np.all(x == x[0]) or np.all(y == y[0]):
        raise ConstantInput(f"{test}: correlation undefined for a constant variable")
    return x, y


def _correlate(x: np.ndarray, y: np.ndarray, test: str) -> TestResult:
    n = len(x)
    xc = x - x.mean()
    yc = y - y.mean()
    r = float(np.dot(xc, yc) / math.sqrt(np.dot(xc, xc) * np.dot(yc, yc)))
    r = max(-1.0, min(1.0, r))
    df = n - 2
    if abs(r) >= 1.0 - 1e-15:
        r = math.copysign(1.0, r)
        p = 0.0
    else:
        t = r * math.sqrt(df / (1.0 - r * r))
        p = t_two_sided(t, df)
    return TestResult(test, r, p, float(df), details={"n": n})


def pearson(x, y) -> TestResult:
    x, y = _paired(x, y, "Pearson")
    return _correlate(x, y, "pearson")


def spearman(x, y) -> TestResult:
    """Pearson correlation of the midranks."""
    x, y = _paired(x, y, "Spearman")
    return _correlate(midranks(x), midranks(y), "spearman")
