# Statistical battery and its special-function kernel
from .comparisons import (
    anova_oneway,
    cohens_d,
    kruskal_wallis,
    levene,
    students_t,
    welch_t,
    wilcoxon_ranksum,
)
from .correlation import pearson, spearman
from .distributions import (
    chisq_cdf,
    chisq_sf,
    f_cdf,
    f_sf,
    normal_cdf,
    normal_ppf,
    normal_sf,
    regularized_beta,
    regularized_gamma_p,
    regularized_gamma_q,
    t_cdf,
    t_sf,
    t_two_sided,
)
from .normality import shapiro_wilk
from .reliability import alpha_acceptable, cronbach_alpha
from .samples import TestResult, as_sample, describe, midranks

__all__ = [
    "TestResult",
    "alpha_acceptable",
    "anova_oneway",
    "as_sample",
    "chisq_cdf",
    "chisq_sf",
    "cohens_d",
    "cronbach_alpha",
    "describe",
    "f_cdf",
    "f_sf",
    "kruskal_wallis",
    "levene",
    "midranks",
    "normal_cdf",
    "normal_ppf",
    "normal_sf",
    "pearson",
    "regularized_beta",
    "regularized_gamma_p",
    "regularized_gamma_q",
    "shapiro_wilk",
    "spearman",
    "students_t",
    "t_cdf",
    "t_sf",
    "t_two_sided",
    "welch_t",
    "wilcoxon_ranksum",
]
