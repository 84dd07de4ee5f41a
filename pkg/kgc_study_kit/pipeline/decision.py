"""
Test selection: normality decides between the parametric and the
nonparametric branch of the battery.

  all groups pass Shapiro-Wilk at alpha   2 groups: Welch t      >2: one-way ANOVA
  any group fails (or cannot be tested)   2 groups: rank-sum     >2: Kruskal-Wallis
  single group                            no comparison, descriptives only
"""

from dataclasses import dataclass, field
from typing import Optional

from kgc_study_kit.errors import AnalysisError, GroupTooSmallForNormality, SampleTooSmall, ZeroVariance
from kgc_study_kit.stats.correlation import pearson, spearman
from kgc_study_kit.stats.normality import shapiro_wilk
from kgc_study_kit.stats.samples import TestResult, as_sample
from kgc_study_kit.utils.logger import setup_logger

logger = setup_logger()

PARAMETRIC = "parametric"
NONPARAMETRIC = "nonparametric"
NO_TEST = "none"


@dataclass
class TestChoice:
    branch: str
    test_name: Optional[str]
    reason: str
    normality: dict = field(default_factory=dict)  # group label -> TestResult | None
    warnings: list = field(default_factory=list)

    __test__ = False

    def as_dict(self) -> dict:
        return {
            "branch": self.branch,
            "test": self.test_name,
            "reason": self.reason,
            "normality": {
                label: (r.as_dict() if r is not None else None) for label, r in self.normality.items()
            },
            "warnings": list(self.warnings),
        }


@dataclass
class CorrelationChoice:
    method: str
    reason: str
    normality: tuple  # (x result | None, y result | None)
    warnings: list = field(default_factory=list)

    def compute(self, x, y) -> TestResult:
        return pearson(x, y) if self.method == "pearson" else spearman(x, y)


def _normality(values, what: str):
    """Shapiro-Wilk result, or (None, warning) when the sample cannot be tested."""
    try:
        return shapiro_wilk(values), None
    except SampleTooSmall:
        err = GroupTooSmallForNormality(f"{what}: n={len(values)} is too small for a normality test")
        return None, str(err)
    except ZeroVariance:
        return None, f"{what}: all values equal, normality not testable"
    except AnalysisError as e:
        return None, f"{what}: normality not testable ({e})"


def select_comparison_test(samples_by_group: dict, alpha: float) -> TestChoice:
    """
    Pick the comparison test for one metric.

    `samples_by_group` maps group label to its values, in report order.
    """
    if not samples_by_group:
        raise SampleTooSmall("test selection needs at least one group")
    k = len(samples_by_group)
    normality = {}
    warnings = []
    all_normal = True
    for label, values in samples_by_group.items():
        values = as_sample(values, f"group {label}")
        result, warning = _normality(values, f"group {label}")
        normality[label] = result
        if warning:
            warnings.append(warning)
            all_normal = False
        elif result.p_value <= alpha:
            all_normal = False

    if k == 1:
        return TestChoice(NO_TEST, None, "single group: descriptives only", normality, warnings)

    if all_normal:
        name = "welch_t" if k == 2 else "anova_oneway"
        reason = f"Shapiro-Wilk p > {alpha} in every group"
        return TestChoice(PARAMETRIC, name, reason, normality, warnings)

    name = "wilcoxon_ranksum" if k == 2 else "kruskal_wallis"
    failing = [label for label, r in normality.items() if r is None or r.p_value <= alpha]
    reason = f"normality rejected or untestable in group(s) {', '.join(failing)}"
    for w in warnings:
        logger.warning(f"Falling back to {name}: {w}")
    return TestChoice(NONPARAMETRIC, name, reason, normality, warnings)


def select_correlation_method(x, y, alpha: float) -> CorrelationChoice:
    """Pearson when both variables pass Shapiro-Wilk at alpha, otherwise Spearman."""
    x = as_sample(x, "x")
    y = as_sample(y, "y")
    if len(x) < 3 or len(y) < 3:
        raise SampleTooSmall(f"correlation needs n >= 3, got {min(len(x), len(y))}")
    rx, wx = _normality(x, "x")
    ry, wy = _normality(y, "y")
    warnings = [w for w in (wx, wy) if w]
    if rx is not None and ry is not None and rx.p_value > alpha and ry.p_value > alpha:
        return CorrelationChoice("pearson", f"Shapiro-Wilk p > {alpha} for both variables", (rx, ry), warnings)
    return CorrelationChoice(
        "spearman", "normality rejected or untestable for at least one variable", (rx, ry), warnings
    )
