"""
Group comparisons: Levene, Welch and Student t, one-way ANOVA, Wilcoxon
rank-sum (Mann-Whitney U), Kruskal-Wallis and Cohen's d.

All p-values are two-sided. Variances use n - 1 denominators.
"""

import math
from itertools import combinations

import numpy as np

from kgc_study_kit.errors import (
    BothDegenerate,
    DegenerateWithin,
    GroupTooSmall,
    SampleTooSmall,
    TooFewGroups,
    ZeroVariance,
)
from kgc_study_kit.stats.distributions import chisq_sf, f_sf, normal_sf, t_two_sided
from kgc_study_kit.stats.samples import TestResult, as_sample, midranks, tie_term
from kgc_study_kit.utils.logger import setup_logger

logger = setup_logger()

EXACT_RANKSUM_MAX_N = 10


def _groups(groups, min_size: int, test: str) -> list[np.ndarray]:
    samples = [as_sample(g, f"{test} group {i + 1}") for i, g in enumerate(groups)]
    if len(samples) < 2:
        raise TooFewGroups(f"{test} needs at least 2 groups, got {len(samples)}")
    for i, s in enumerate(samples, start=1):
        if len(s) < min_size:
            raise GroupTooSmall(f"{test}: group {i} has {len(s)} observation(s), needs {min_size}")
    return samples


def _one_way(samples: list[np.ndarray]) -> tuple[float, float, int, int]:
    """Between and within sums of squares with their degrees of freedom."""
    pooled = np.concatenate(samples)
    grand = pooled.mean()
    ss_between = float(sum(len(s) * (s.mean() - grand) ** 2 for s in samples))
    ss_within = float(sum(np.sum((s - s.mean()) ** 2) for s in samples))
    return ss_between, ss_within, len(samples) - 1, len(pooled) - len(samples)


def levene(groups) -> TestResult:
    """Levene's test with mean-centred absolute deviations."""
    samples = _groups(groups, 2, "Levene")
    deviations = [np.abs(s - s.mean()) for s in samples]
    ss_between, ss_within, df1, df2 = _one_way(deviations)
    if ss_within == 0:
        if ss_between == 0:
            return TestResult("levene", 0.0, 1.0, (df1, df2), notes=["all absolute deviations equal"])
        # spread differs between groups but not within them
        return TestResult(
            "levene", math.inf, 0.0, (df1, df2),
            notes=["absolute deviations are constant within every group"],
        )
    f = (ss_between / df1) / (ss_within / df2)
    return TestResult("levene", f, f_sf(f, df1, df2), (df1, df2))


def anova_oneway(groups) -> TestResult:
    samples = _groups(groups, 2, "ANOVA")
    ss_between, ss_within, df1, df2 = _one_way(samples)
    if ss_within == 0:
        raise DegenerateWithin("ANOVA: pooled within-group variance is zero")
    f = (ss_between / df1) / (ss_within / df2)
    return TestResult(
        "anova_oneway",
        f,
        f_sf(f, df1, df2),
        (df1, df2),
        details={"ssBetween": ss_between, "ssWithin": ss_within},
    )


def _two_samples(a, b, min_size: int, test: str) -> tuple[np.ndarray, np.ndarray]:
    a = as_sample(a, f"{test} first sample")
    b = as_sample(b, f"{test} second sample")
    if len(a) < min_size or len(b) < min_size:
        raise SampleTooSmall(f"{test} needs n >= {min_size} per group, got {len(a)} and {len(b)}")
    return a, b


def welch_t(a, b) -> TestResult:
    a, b = _two_samples(a, b, 2, "Welch t")
    va = np.var(a, ddof=1) / len(a)
    vb = np.var(b, ddof=1) / len(b)
    se2 = va + vb
    if se2 == 0:
        raise BothDegenerate("Welch t: both groups have zero variance")
    t = float((a.mean() - b.mean()) / math.sqrt(se2))
    df = float(se2 ** 2 / (va ** 2 / (len(a) - 1) + vb ** 2 / (len(b) - 1)))
    return TestResult(
        "welch_t", t, t_two_sided(t, df), df,
        details={"meanDifference": float(a.mean() - b.mean())},
    )


def students_t(a, b) -> TestResult:
    a, b = _two_samples(a, b, 2, "Student t")
    na, nb = len(a), len(b)
    df = na + nb - 2
    pooled = ((na - 1) * np.var(a, ddof=1) + (nb - 1) * np.var(b, ddof=1)) / df
    if pooled == 0:
        raise BothDegenerate("Student t: pooled variance is zero")
    t = float((a.mean() - b.mean()) / math.sqrt(pooled * (1.0 / na + 1.0 / nb)))
    return TestResult("students_t", t, t_two_sided(t, df), float(df))


def cohens_d(a, b) -> float:
    """Standardized mean difference with the pooled (n - 1) standard deviation."""
    a, b = _two_samples(a, b, 2, "Cohen's d")
    na, nb = len(a), len(b)
    pooled = ((na - 1) * np.var(a, ddof=1) + (nb - 1) * np.var(b, ddof=1)) / (na + nb - 2)
    if pooled == 0:
        raise ZeroVariance("Cohen's d: pooled standard deviation is zero")
    return float((a.mean() - b.mean()) / math.sqrt(pooled))


def _exact_ranksum_p(ranks: np.ndarray, n1: int, u: float) -> float:
    """Two-sided exact p by enumerating every assignment of pooled midranks."""
    offset = n1 * (n1 + 1) / 2.0
    centre = n1 * (len(ranks) - n1) / 2.0
    observed = abs(u - centre)
    extreme = 0
    total = 0
    for idx in combinations(range(len(ranks)), n1):
        total += 1
        u_perm = float(ranks[list(idx)].sum()) - offset
        if abs(u_perm - centre) >= observed - 1e-9:
            extreme += 1
    return extreme / total


def wilcoxon_ranksum(a, b) -> TestResult:
    """
    Wilcoxon rank-sum test reported as the Mann-Whitney U of the first sample.

    Exact permutation p when the pooled n is at most 10, otherwise the normal
    approximation with tie and continuity correction. details["z"] holds the
    standardized U without continuity correction.
    """
    a, b = _two_samples(a, b, 1, "Wilcoxon rank-sum")
    n1, n2 = len(a), len(b)
    n = n1 + n2
    if n < 4:
        raise SampleTooSmall(f"Wilcoxon rank-sum needs a combined n >= 4, got {n}")
    pooled = np.concatenate([a, b])
    ranks = midranks(pooled)
    u = float(ranks[:n1].sum() - n1 * (n1 + 1) / 2.0)
    centre = n1 * n2 / 2.0
    variance = n1 * n2 / 12.0 * ((n + 1) - tie_term(pooled) / (n * (n - 1)))
    sigma = math.sqrt(variance) if variance > 0 else 0.0
    z = (u - centre) / sigma if sigma > 0 else 0.0
    notes = []

    if n <= EXACT_RANKSUM_MAX_N:
        method = "exact"
        p = _exact_ranksum_p(ranks, n1, u)
    else:
        method = "normal"
        if sigma == 0:
            p = 1.0
        else:
            corrected = max(abs(u - centre) - 0.5, 0.0) / sigma
            p = min(1.0, 2.0 * normal_sf(corrected))
    if sigma == 0:
        notes.append("all observations tied")
    return TestResult(
        "wilcoxon_ranksum", u, p,
        details={"z": z, "method": method, "n1": n1, "n2": n2},
        notes=notes,
    )


def kruskal_wallis(groups) -> TestResult:
    samples = _groups(groups, 1, "Kruskal-Wallis")
    pooled = np.concatenate(samples)
    n = len(pooled)
    if n < 5:
        raise SampleTooSmall(f"Kruskal-Wallis needs N >= 5, got {n}")
    k = len(samples)
    ranks = midranks(pooled)
    correction = 1.0 - tie_term(pooled) / (n ** 3 - n)
    if correction <= 0:
        logger.debug("Kruskal-Wallis: all observations tied")
        return TestResult("kruskal_wallis", 0.0, 1.0, float(k - 1), notes=["all observations tied"])
    h = 0.0
    start = 0
    for s in samples:
        r = ranks[start:start + len(s)]
        h += r.sum() ** 2 / len(s)
        start += len(s)
    h = 12.0 / (n * (n + 1)) * h - 3.0 * (n + 1)
    h = max(0.0, float(h / correction))
    return TestResult("kruskal_wallis", h, chisq_sf(h, k - 1), float(k - 1))
