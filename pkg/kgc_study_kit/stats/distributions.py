"""
Distribution kernel for p-values.

Normal probabilities come from erfc; Student t, F and chi-square probabilities
from the regularized incomplete beta and gamma functions, evaluated with
modified Lentz continued fractions (Numerical Recipes formulation) in double
precision. Survival functions are computed directly rather than as 1 - cdf so
that small tail probabilities keep their relative accuracy.
"""

import math
from numbers import Real

from kgc_study_kit.errors import DomainError

_EPS = 1e-15
_TINY = 1e-300
_MAX_ITER = 10000

_SQRT2 = math.sqrt(2.0)


def _check_finite(x, name="x"):
    if isinstance(x, bool) or not isinstance(x, Real) or math.isnan(x):
        raise DomainError(f"{name} must be a real number, got {x!r}")
    return float(x)


def _check_df(df, name="df"):
    df = _check_finite(df, name)
    if not df > 0 or math.isinf(df):
        raise DomainError(f"{name} must be positive and finite, got {df!r}")
    return df


def _clamp(p: float) -> float:
    return min(1.0, max(0.0, p))


# ---------- incomplete gamma ----------

def _gamma_series(a: float, x: float) -> float:
    term = 1.0 / a
    total = term
    ap = a
    for _ in range(_MAX_ITER):
        ap += 1.0
        term *= x / ap
        total += term
        if abs(term) < abs(total) * _EPS:
            break
    else:
        raise DomainError(f"incomplete gamma series did not converge (a={a}, x={x})")
    return total * math.exp(-x + a * math.log(x) - math.lgamma(a))


def _gamma_continued_fraction(a: float, x: float) -> float:
    b = x + 1.0 - a
    c = 1.0 / _TINY
    d = 1.0 / b
    h = d
    for i in range(1, _MAX_ITER):
        an = -i * (i - a)
        b += 2.0
        d = an * d + b
        if abs(d) < _TINY:
            d = _TINY
        c = b + an / c
        if abs(c) < _TINY:
            c = _TINY
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < _EPS:
            break
    else:
        raise DomainError(f"incomplete gamma fraction did not converge (a={a}, x={x})")
    return math.exp(-x + a * math.log(x) - math.lgamma(a)) * h


def regularized_gamma_p(a: float, x: float) -> float:
    """Lower regularized incomplete gamma P(a, x)."""
    a = _check_df(a, "a")
    x = _check_finite(x)
    if x < 0:
        raise DomainError(f"x must be non-negative, got {x}")
    if x == 0:
        return 0.0
    if math.isinf(x):
        return 1.0
    if x < a + 1.0:
        return _clamp(_gamma_series(a, x))
    return _clamp(1.0 - _gamma_continued_fraction(a, x))


def regularized_gamma_q(a: float, x: float) -> float:
    """Upper regularized incomplete gamma Q(a, x) = 1 - P(a, x)."""
    a = _check_df(a, "a")
    x = _check_finite(x)
    if x < 0:
        raise DomainError(f"x must be non-negative, got {x}")
    if x == 0:
        return 1.0
    if math.isinf(x):
        return 0.0
    if x < a + 1.0:
        return _clamp(1.0 - _gamma_series(a, x))
    return _clamp(_gamma_continued_fraction(a, x))


# ---------- incomplete beta ----------

def _beta_continued_fraction(a: float, b: float, x: float) -> float:
    qab = a + b
    qap = a + 1.0
    qam = a - 1.0
    c = 1.0
    d = 1.0 - qab * x / qap
    if abs(d) < _TINY:
        d = _TINY
    d = 1.0 / d
    h = d
    for m in range(1, _MAX_ITER):
        m2 = 2 * m
        aa = m * (b - m) * x / ((qam + m2) * (a + m2))
        d = 1.0 + aa * d
        if abs(d) < _TINY:
            d = _TINY
        c = 1.0 + aa / c
        if abs(c) < _TINY:
            c = _TINY
        d = 1.0 / d
        h *= d * c
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2))
        d = 1.0 + aa * d
        if abs(d) < _TINY:
            d = _TINY
        c = 1.0 + aa / c
        if abs(c) < _TINY:
            c = _TINY
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < _EPS:
            return h
    raise DomainError(f"incomplete beta fraction did not converge (a={a}, b={b}, x={x})")


def regularized_beta(x: float, a: float, b: float) -> float:
    """Regularized incomplete beta I_x(a, b)."""
    x = _check_finite(x)
    a = _check_df(a, "a")
    b = _check_df(b, "b")
    if not 0.0 <= x <= 1.0:
        raise DomainError(f"x must lie in [0, 1], got {x}")
    if x == 0.0:
        return 0.0
    if x == 1.0:
        return 1.0
    log_front = (
        math.lgamma(a + b) - math.lgamma(a) - math.lgamma(b)
        + a * math.log(x) + b * math.log1p(-x)
    )
    front = math.exp(log_front)
    if x < (a + 1.0) / (a + b + 2.0):
        return _clamp(front * _beta_continued_fraction(a, b, x) / a)
    return _clamp(1.0 - front * _beta_continued_fraction(b, a, 1.0 - x) / b)


# ---------- normal ----------

def normal_pdf(x: float) -> float:
    return math.exp(-0.5 * x * x) / math.sqrt(2.0 * math.pi)


def normal_cdf(x: float) -> float:
    x = _check_finite(x)
    return _clamp(0.5 * math.erfc(-x / _SQRT2))


def normal_sf(x: float) -> float:
    x = _check_finite(x)
    return _clamp(0.5 * math.erfc(x / _SQRT2))


# Wichura's PPND16 rational approximations
_PPF_A = (3.3871328727963666080e0, 1.3314166789178437745e2, 1.9715909503065514427e3,
          1.3731693765509461125e4, 4.5921953931549871457e4, 6.7265770927008700853e4,
          3.3430575583588128105e4, 2.5090809287301226727e3)
_PPF_B = (1.0, 4.2313330701600911252e1, 6.8718700749205790830e2, 5.3941960214247511077e3,
          2.1213794301586595867e4, 3.9307895800092710610e4, 2.8729085735721942674e4,
          5.2264952788528545610e3)
_PPF_C = (1.42343711074968357734e0, 4.63033784615654529590e0, 5.76949722146069140550e0,
          3.64784832476320460504e0, 1.27045825245236838258e0, 2.41780725177450611770e-1,
          2.27238449892691845833e-2, 7.74545014278341407640e-4)
_PPF_D = (1.0, 2.05319162663775882187e0, 1.67638483018380384940e0, 6.89767334985100004550e-1,
          1.48103976427480074590e-1, 1.51986665636164571966e-2, 5.47593808499534494600e-4,
          1.05075007164441684324e-9)
_PPF_E = (6.65790464350110377720e0, 5.46378491116411436990e0, 1.78482653991729133580e0,
          2.96560571828504891230e-1, 2.65321895265761230930e-2, 1.24266094738807843860e-3,
          2.71155556874348757815e-5, 2.01033439929228813265e-7)
_PPF_F = (1.0, 5.99832206555887937690e-1, 1.36929880922735805310e-1, 1.48753612908506148525e-2,
          7.86869131145613259100e-4, 1.84631831751005468180e-5, 1.42151175831644588870e-7,
          2.04426310338993978564e-15)


def polyval(coefficients, x: float) -> float:
    """Evaluate c0 + c1*x + c2*x^2 + ... (Horner)."""
    result = 0.0
    for c in reversed(coefficients):
        result = result * x + c
    return result


def normal_ppf(p: float) -> float:
    """Standard normal quantile."""
    p = _check_finite(p, "p")
    if not 0.0 < p < 1.0:
        if p == 0.0:
            return -math.inf
        if p == 1.0:
            return math.inf
        raise DomainError(f"p must lie in [0, 1], got {p}")
    q = p - 0.5
    if abs(q) <= 0.425:
        r = 0.180625 - q * q
        x = q * polyval(_PPF_A, r) / polyval(_PPF_B, r)
    else:
        r = math.sqrt(-math.log(p if q < 0 else 1.0 - p))
        if r <= 5.0:
            r -= 1.6
            x = polyval(_PPF_C, r) / polyval(_PPF_D, r)
        else:
            r -= 5.0
            x = polyval(_PPF_E, r) / polyval(_PPF_F, r)
        if q < 0:
            x = -x
    # one Newton step against the erfc-based cdf
    density = normal_pdf(x)
    if density > 1e-300:
        x -= (normal_cdf(x) - p) / density
    return x


# ---------- Student t ----------

def t_sf(x: float, df: float) -> float:
    """P(T > x)."""
    x = _check_finite(x)
    df = _check_df(df)
    if math.isinf(x):
        return 0.0 if x > 0 else 1.0
    tail = 0.5 * regularized_beta(df / (df + x * x), df / 2.0, 0.5)
    return _clamp(tail if x >= 0 else 1.0 - tail)


def t_cdf(x: float, df: float) -> float:
    x = _check_finite(x)
    return t_sf(-x, df)


def t_two_sided(x: float, df: float) -> float:
    """P(|T| >= |x|)."""
    x = _check_finite(x)
    df = _check_df(df)
    if math.isinf(x):
        return 0.0
    return _clamp(regularized_beta(df / (df + x * x), df / 2.0, 0.5))


# ---------- F ----------

def f_cdf(x: float, d1: float, d2: float) -> float:
    x = _check_finite(x)
    d1 = _check_df(d1, "d1")
    d2 = _check_df(d2, "d2")
    if x <= 0:
        return 0.0
    if math.isinf(x):
        return 1.0
    return regularized_beta(d1 * x / (d1 * x + d2), d1 / 2.0, d2 / 2.0)


def f_sf(x: float, d1: float, d2: float) -> float:
    x = _check_finite(x)
    d1 = _check_df(d1, "d1")
    d2 = _check_df(d2, "d2")
    if x <= 0:
        return 1.0
    if math.isinf(x):
        return 0.0
    return regularized_beta(d2 / (d2 + d1 * x), d2 / 2.0, d1 / 2.0)


# ---------- chi-square ----------

def chisq_cdf(x: float, df: float) -> float:
    x = _check_finite(x)
    df = _check_df(df)
    if x <= 0:
        return 0.0
    return regularized_gamma_p(df / 2.0, x / 2.0)


def chisq_sf(x: float, df: float) -> float:
    x = _check_finite(x)
    df = _check_df(df)
    if x <= 0:
        return 1.0
    return regularized_gamma_q(df / 2.0, x / 2.0)
