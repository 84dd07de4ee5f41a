"""
Shapiro-Wilk normality test, Royston's AS R94 algorithm.

Coefficients for the two most extreme order statistics come from polynomial
fits in 1/sqrt(n); the rest from normal scores. The p-value uses Royston's
normalizing transformations (one for n <= 11, one above). Valid for
3 <= n <= 5000.
"""

import math

import numpy as np

from kgc_study_kit.errors import SampleTooLarge, SampleTooSmall, ZeroVariance
from kgc_study_kit.stats.distributions import normal_ppf, normal_sf, polyval
from kgc_study_kit.stats.samples import TestResult, as_sample

MAX_N = 5000

_C1 = (0.0, 0.221157, -0.147981, -2.07119, 4.434685, -2.706056)
_C2 = (0.0, 0.042981, -0.293762, -1.752461, 5.682633, -3.582633)
_C3 = (0.544, -0.39978, 0.025054, -6.714e-4)
_C4 = (1.3822, -0.77857, 0.062767, -0.0020322)
_C5 = (-1.5861, -0.31082, -0.083751, 0.0038915)
_C6 = (-0.4803, -0.082676, 0.0030302)
_G = (-2.273, 0.459)


def _half_coefficients(n: int) -> np.ndarray:
    """Coefficients a_1..a_{n//2} for the upper half of the order statistics."""
    half = n // 2
    if n == 3:
        return np.array([math.sqrt(0.5)])
    m = np.array([normal_ppf((i - 0.375) / (n + 0.25)) for i in range(1, half + 1)])
    summ2 = 2.0 * float(np.sum(m * m))
    ssumm2 = math.sqrt(summ2)
    rsn = 1.0 / math.sqrt(n)
    a = np.empty(half)
    a1 = polyval(_C1, rsn) - m[0] / ssumm2
    if n > 5:
        a2 = -m[1] / ssumm2 + polyval(_C2, rsn)
        fac = math.sqrt(
            (summ2 - 2.0 * m[0] ** 2 - 2.0 * m[1] ** 2) / (1.0 - 2.0 * a1 ** 2 - 2.0 * a2 ** 2)
        )
        a[1] = a2
        start = 2
    else:
        fac = math.sqrt((summ2 - 2.0 * m[0] ** 2) / (1.0 - 2.0 * a1 ** 2))
        start = 1
    a[0] = a1
    a[start:] = -m[start:] / fac
    return a


def _full_coefficients(n: int) -> np.ndarray:
    a = _half_coefficients(n)
    full = np.zeros(n)
    half = len(a)
    full[:half] = -a
    full[n - half:] = a[::-1]
    return full


def _p_value(w: float, n: int) -> float:
    if n == 3:
        return min(1.0, max(0.0, (6.0 / math.pi) * (math.asin(math.sqrt(w)) - math.pi / 3.0)))
    w1 = 1.0 - w
    if w1 <= 0:
        return 1.0
    y = math.log(w1)
    if n <= 11:
        gamma = polyval(_G, n)
        if y >= gamma:
            return 1e-99
        y = -math.log(gamma - y)
        mean = polyval(_C3, n)
        sd = math.exp(polyval(_C4, n))
    else:
        ln = math.log(n)
        mean = polyval(_C5, ln)
        sd = math.exp(polyval(_C6, ln))
    return normal_sf((y - mean) / sd)


def shapiro_wilk(values) -> TestResult:
    x = np.sort(as_sample(values))
    n = len(x)
    if n < 3:
        raise SampleTooSmall(f"Shapiro-Wilk needs n >= 3, got {n}")
    if n > MAX_N:
        raise SampleTooLarge(f"Shapiro-Wilk is valid up to n = {MAX_N}, got {n}")
    spread = x[-1] - x[0]
    if spread <= 1e-19 * max(1.0, abs(x[0])):
        raise ZeroVariance("Shapiro-Wilk on a constant sample")

    a = _full_coefficients(n)
    xs = (x - x.mean()) / spread
    ac = a - a.mean()
    w = float(np.dot(ac, xs) ** 2 / (np.dot(ac, ac) * np.dot(xs, xs)))
    w = min(w, 1.0)
    return TestResult("shapiro_wilk", w, _p_value(w, n), details={"n": n})
