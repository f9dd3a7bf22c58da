"""Special functions needed by the coherent-state families.

Scalar entry points validate their domain and raise :class:`DomainError`;
the ``*_table`` helpers are the vectorised forms used by the families and
skip validation.
"""
import math

import numpy as np

from . import _kernels
from .errors import DomainError, NoConvergence

_EPS = 1e-16
_TINY = 1e-300


def _finite(value, name):
    if not math.isfinite(value):
        raise DomainError(f"{name} is not finite at the requested argument")
    return value


def ln_gamma(x):
    """ln Gamma(x) for x > 0."""
    if not x > 0:
        raise DomainError(f"ln_gamma requires x > 0, got {x!r}")
    return math.lgamma(x)


def _lower_series(alpha, x):
    # gamma(alpha, x) = e^-x x^alpha sum_n x^n / (alpha (alpha+1) ... (alpha+n))
    term = 1.0 / alpha
    total = term
    ap = alpha
    for _ in range(10_000):
        ap += 1.0
        term *= x / ap
        total += term
        if abs(term) < abs(total) * _EPS:
            return total * math.exp(-x + alpha * math.log(x))
    raise NoConvergence("lower incomplete gamma series")


def _upper_contfrac(alpha, x):
    # modified Lentz evaluation of the continued fraction for Gamma(alpha, x)
    b = x + 1.0 - alpha
    c = 1.0 / _TINY
    d = 1.0 / b
    h = d
    for i in range(1, 10_000):
        an = -i * (i - alpha)
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
            return math.exp(-x + alpha * math.log(x)) * h
    raise NoConvergence("upper incomplete gamma continued fraction")


def upper_gamma(alpha, x):
    """Upper incomplete gamma Gamma(alpha, x) = int_x^inf e^-t t^(alpha-1) dt.

    Series for the lower function when x < alpha + 1, continued fraction
    otherwise.
    """
    if not alpha > 0:
        raise DomainError(f"upper_gamma requires alpha > 0, got {alpha!r}")
    if not x >= 0:
        raise DomainError(f"upper_gamma requires x >= 0, got {x!r}")
    if x == 0:
        return math.gamma(alpha)
    if x < alpha + 1.0:
        return _finite(math.gamma(alpha) - _lower_series(alpha, x), "upper_gamma")
    return _finite(_upper_contfrac(alpha, x), "upper_gamma")


def lower_gamma(alpha, x):
    """Lower incomplete gamma gamma(alpha, x) = int_0^x e^-t t^(alpha-1) dt."""
    if not alpha > 0:
        raise DomainError(f"lower_gamma requires alpha > 0, got {alpha!r}")
    if not x >= 0:
        raise DomainError(f"lower_gamma requires x >= 0, got {x!r}")
    if x == 0:
        return 0.0
    if x < alpha + 1.0:
        return _lower_series(alpha, x)
    return math.gamma(alpha) - _upper_contfrac(alpha, x)


def laguerre_table(m_count, alpha, xs):
    """Array ``L[m, j] = L_m^alpha(xs[j])`` for ``m < m_count``."""
    xs = np.ascontiguousarray(np.atleast_1d(xs), dtype=float)
    return _kernels.laguerre_table(int(m_count), float(alpha), xs)


def laguerre_alpha(m, alpha, x):
    """Generalised Laguerre polynomial L_m^alpha(x), signed."""
    if m < 0 or int(m) != m:
        raise DomainError(f"laguerre_alpha requires integer m >= 0, got {m!r}")
    if not alpha > -1:
        raise DomainError(f"laguerre_alpha requires alpha > -1, got {alpha!r}")
    if not x >= 0:
        raise DomainError(f"laguerre_alpha requires x >= 0, got {x!r}")
    value = float(laguerre_table(int(m) + 1, alpha, [x])[int(m), 0])
    return _finite(value, "laguerre_alpha")


def bessel_half_table(m_count, xs):
    """Array ``J[m, j] = J_{m+1/2}(xs[j])`` for ``m < m_count``; every x must be > 0."""
    xs = np.ascontiguousarray(np.atleast_1d(xs), dtype=float)
    return _kernels.bessel_half_table(int(m_count), xs)


def bessel_j_half(m, x):
    """Bessel function of the first kind of half-integer order, J_{m+1/2}(x), x > 0."""
    if m < 0 or int(m) != m:
        raise DomainError(f"bessel_j_half requires integer m >= 0, got {m!r}")
    if not x > 0:
        raise DomainError(f"bessel_j_half requires x > 0, got {x!r}")
    return _finite(float(bessel_half_table(int(m) + 1, [x])[int(m), 0]), "bessel_j_half")


def bessel_j_series(nu, x, terms=40):
    """Direct power series for J_nu(x); kept as an independent check on the recurrences."""
    total = 0.0
    half = 0.5 * x
    for k in range(terms):
        total += (-1) ** k * math.exp((nu + 2 * k) * math.log(half) - math.lgamma(k + 1) - math.lgamma(nu + k + 1))
    return total


def i_half(x):
    """Modified Bessel function of the first kind I_{1/2}(x) = sqrt(2/(pi x)) sinh x."""
    if not x > 0:
        raise DomainError(f"i_half requires x > 0, got {x!r}")
    try:
        return _finite(math.sqrt(2.0 / (math.pi * x)) * math.sinh(x), "i_half")
    except OverflowError as exc:
        raise DomainError(f"i_half overflows at x={x!r}") from exc


def pochhammer(a, n):
    """Rising factorial (a)_n = Gamma(a+n)/Gamma(a)."""
    if not a > 0:
        raise DomainError(f"pochhammer requires a > 0, got {a!r}")
    if n < 0 or int(n) != n:
        raise DomainError(f"pochhammer requires integer n >= 0, got {n!r}")
    n = int(n)
    if n <= 64:
        out = 1.0
        for i in range(n):
            out *= a + i
        return _finite(out, "pochhammer")
    return _finite(math.exp(math.lgamma(a + n) - math.lgamma(a)), "pochhammer")


def log_pochhammer(a, n):
    """ln (a)_n, usable where (a)_n itself overflows."""
    if not a > 0:
        raise DomainError(f"log_pochhammer requires a > 0, got {a!r}")
    return math.lgamma(a + n) - math.lgamma(a)
