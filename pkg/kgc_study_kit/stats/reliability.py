import numpy as np

from kgc_study_kit.errors import DegenerateInput, RangeError

ACCEPTABLE_ALPHA = 0.7


def as_item_matrix(matrix) -> np.ndarray:
    """Rows are participants, columns are items."""
    try:
        m = np.asarray(matrix, dtype=float)
    except (TypeError, ValueError) as e:
        raise RangeError(f"item matrix must be rectangular and numeric: {e}")
    if m.ndim != 2:
        raise RangeError(f"item matrix must be two-dimensional, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise RangeError("item matrix contains NaN or infinite values")
    return m


def cronbach_alpha(matrix) -> float:
    """
    Internal consistency of a questionnaire.

    alpha = k/(k-1) * (1 - sum(item variances) / variance(total score)),
    sample variances (ddof=1).
    """
    m = as_item_matrix(matrix)
    n, k = m.shape
    if k < 2 or n < 2:
        raise DegenerateInput(f"Cronbach's alpha needs >= 2 items and >= 2 participants, got {n}x{k}")
    item_variances = np.var(m, axis=0, ddof=1)
    total_variance = np.var(m.sum(axis=1), ddof=1)
    if total_variance == 0:
        raise DegenerateInput("total score variance is zero")
    return float((k / (k - 1)) * (1 - item_variances.sum() / total_variance))


def alpha_acceptable(alpha: float) -> bool:
    return alpha >= ACCEPTABLE_ALPHA
