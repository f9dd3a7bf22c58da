"""Truncated generalized-oscillator algebra built from the weight sequence rho.

With x_m = rho(m) / rho(m-1) the ladder operators act as
a phi_m = sqrt(x_m) phi_{m-1}, a^dagger phi_m = sqrt(x_{m+1}) phi_{m+1} and
N phi_m = x_m phi_m.  Families whose x_m overflow double precision (the power
family at moderate dim) are handled with mpmath object arrays.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import mpmath
import numpy as np

from .core import check_label, state_vector
from .errors import RatioUndefined

_MP_DPS = 40


@dataclass(frozen=True)
class LadderTriple:
    """Truncated a, a^dagger, N on span(phi_0 .. phi_{dim-1}).

    ``n_op`` is diag(sqrt(x_m)^2), so a^dagger a equals it entry for entry.
    ``exact`` is True when the entries are mpmath numbers.
    """

    dim: int
    a: np.ndarray
    a_dagger: np.ndarray
    n_op: np.ndarray
    x: tuple
    exact: bool = False


@dataclass(frozen=True)
class Su11Triple:
    dim: int
    A: np.ndarray
    A_dagger: np.ndarray
    frakN: np.ndarray


@dataclass(frozen=True)
class AlgebraResult:
    """Residual summary of an algebraic check; ``details`` maps relation -> residual."""

    name: str
    residual: float
    details: dict
    boundary: dict


def _x_sequence(entry, dim):
    lr = [entry.spec.log_rho(m) for m in range(dim)]
    logs = [lr[m] - lr[m - 1] for m in range(1, dim)]
    if max(logs) < 700.0:
        return [0.0] + [math.exp(v) for v in logs], False
    with mpmath.workdps(_MP_DPS):
        out = [mpmath.mpf(0)]
        for m in range(1, dim):
            out.append(_mp_x(entry, m))
    return out, True


def _mp_x(entry, m):
    # only the power family needs this path: x_m = Gamma(k^m + 1) / Gamma(k^(m-1) + 1)
    k = entry.spec.param_dict.get("k")
    if k is None:
        return mpmath.exp(mpmath.mpf(entry.spec.log_rho(m)) - mpmath.mpf(entry.spec.log_rho(m - 1)))
    return mpmath.exp(mpmath.loggamma(mpmath.mpf(k) ** m + 1) - mpmath.loggamma(mpmath.mpf(k) ** (m - 1) + 1))


def ladder_from_x(x, exact=False):
    dim = len(x)
    if exact:
        with mpmath.workdps(_MP_DPS):
            zero = mpmath.mpf(0)
            s = [mpmath.sqrt(v) for v in x]
            a = np.full((dim, dim), zero, dtype=object)
            for m in range(1, dim):
                a[m - 1, m] = s[m]
            n_op = np.full((dim, dim), zero, dtype=object)
            for m in range(dim):
                n_op[m, m] = s[m] * s[m]
        return LadderTriple(dim, a, a.T.copy(), n_op, tuple(x), True)
    s = np.sqrt(np.asarray(x, dtype=float))
    a = np.diag(s[1:], k=1)
    return LadderTriple(dim, a, a.T.copy(), np.diag(s * s), tuple(float(v) for v in x), False)


def ladder_matrices(entry, dim):
    """Ladder triple for a catalog entry; x_0 = 0 encodes a phi_0 = 0."""
    if dim < 3:
        raise ValueError("ladder_matrices requires dim >= 3")
    x, exact = _x_sequence(entry, dim)
    return ladder_from_x(x, exact)


def _comm(A, B):
    return A.dot(B) - B.dot(A)


def _abs(A):
    if A.dtype == object:
        return np.vectorize(lambda v: abs(v), otypes=[object])(A)
    return np.abs(A)


def relative_residual(C, E, A, B, interior):
    """max over the interior block of |C - E| / (|A||B| + |B||A|), entrywise."""
    with mpmath.workdps(_MP_DPS):
        num = _abs(C - E)
        den = _abs(A).dot(_abs(B)) + _abs(B).dot(_abs(A))
        worst = 0.0
        for i in range(interior):
            for j in range(interior):
                n = num[i, j]
                if n == 0:
                    continue
                d = den[i, j]
                worst = max(worst, float(n / d) if d != 0 else math.inf)
    return worst


def _expected(triple):
    """Correct right-hand sides of the three commutators, with sqrt(x) factors."""
    x = triple.x
    dim = triple.dim
    dtype = object if triple.exact else float
    zero = mpmath.mpf(0) if triple.exact else 0.0
    sq = (lambda v: mpmath.sqrt(v)) if triple.exact else math.sqrt
    c_aad = np.full((dim, dim), zero, dtype=dtype)
    c_nad = np.full((dim, dim), zero, dtype=dtype)
    c_na = np.full((dim, dim), zero, dtype=dtype)
    for m in range(dim - 1):
        c_aad[m, m] = x[m + 1] - x[m]
        c_nad[m + 1, m] = (x[m + 1] - x[m]) * sq(x[m + 1])
        c_na[m, m + 1] = (x[m] - x[m + 1]) * sq(x[m + 1])
    return c_aad, c_nad, c_na


def _unscaled(triple):
    """Commutator right-hand sides with the sqrt(x) factors dropped, for comparison."""
    x = triple.x
    dim = triple.dim
    dtype = object if triple.exact else float
    zero = mpmath.mpf(0) if triple.exact else 0.0
    c_nad = np.full((dim, dim), zero, dtype=dtype)
    c_na = np.full((dim, dim), zero, dtype=dtype)
    for m in range(dim - 1):
        c_nad[m + 1, m] = x[m + 1] - x[m]
        c_na[m, m + 1] = x[m] - x[m + 1]
    return c_nad, c_na


def commutator_check(triple):
    """Interior residuals of [a, a^dagger], [N, a^dagger], [N, a] against their diagonal/shift forms.

    Rows and columns m >= dim - 2 are excluded (truncation artifact); their
    defect is reported under ``boundary``.  The forms without sqrt(x) factors
    are evaluated too and reported as ``unscaled`` entries of ``boundary``,
    not folded into the residual.
    """
    if triple.dim < 3:
        raise ValueError("commutator_check requires dim >= 3")
    a, ad, n = triple.a, triple.a_dagger, triple.n_op
    e_aad, e_nad, e_na = _expected(triple)
    inner = triple.dim - 2
    with mpmath.workdps(_MP_DPS):
        c_aad, c_nad, c_na = _comm(a, ad), _comm(n, ad), _comm(n, a)
    details = {
        "[a,a+]": relative_residual(c_aad, e_aad, a, ad, inner),
        "[N,a+]": relative_residual(c_nad, e_nad, n, ad, inner),
        "[N,a]": relative_residual(c_na, e_na, n, a, inner),
        "a+a=N": relative_residual(ad.dot(a), n, ad, a, triple.dim),
    }
    p_nad, p_na = _unscaled(triple)
    boundary = {
        "[a,a+]": relative_residual(c_aad, e_aad, a, ad, triple.dim),
        "unscaled [N,a+]": relative_residual(c_nad, p_nad, n, ad, inner),
        "unscaled [N,a]": relative_residual(c_na, p_na, n, a, inner),
    }
    return AlgebraResult("commutators", max(details.values()), details, boundary)


def logdisc_x(dim):
    """x_m = (2m)! / (2m-2)! = 2m(2m-1), from rho(m) = (2m)!."""
    return [0.0] + [2.0 * m * (2.0 * m - 1.0) for m in range(1, dim)]


def su11_triple(dim):
    t = ladder_from_x(logdisc_x(dim))
    return Su11Triple(dim, t.a / 2.0, t.a_dagger / 2.0, np.diag(np.arange(dim) + 0.25))


def su11_check(dim):
    """[A, A^dagger] = 2 frakN, [frakN, A] = -A, [frakN, A^dagger] = A^dagger on interior indices."""
    if dim < 4:
        raise ValueError("su11_check requires dim >= 4")
    s = su11_triple(dim)
    inner = dim - 2
    details = {
        "[A,A+]=2N": relative_residual(_comm(s.A, s.A_dagger), 2.0 * s.frakN, s.A, s.A_dagger, inner),
        "[N,A]=-A": relative_residual(_comm(s.frakN, s.A), -s.A, s.frakN, s.A, inner),
        "[N,A+]=A+": relative_residual(_comm(s.frakN, s.A_dagger), s.A_dagger, s.frakN, s.A_dagger, inner),
    }
    boundary = {
        "[A,A+]=2N": relative_residual(_comm(s.A, s.A_dagger), 2.0 * s.frakN, s.A, s.A_dagger, dim),
        "N-A+A": float(np.max(np.abs(s.frakN - s.A_dagger @ s.A))),
    }
    return AlgebraResult("su11", max(details.values()), details, boundary)


# ---------------------------------------------------------------------------
# eigenstates and the no-go scan
# ---------------------------------------------------------------------------

def label_to_z(spec, r, theta):
    """Complex label z of the analytic families; others have none."""
    if spec.name == "disc":
        return (spec.param_dict["y"] - r) * complex(math.cos(theta), math.sin(theta))
    if spec.name == "logdisc":
        return math.log(r) * complex(math.cos(theta), math.sin(theta))
    if spec.name == "canonical":
        return r * complex(math.cos(theta), math.sin(theta))
    if spec.name == "power":
        return r * complex(math.cos(theta), math.sin(theta))
    raise ValueError(f"{spec.name}: labels are not complex numbers z")


@dataclass(frozen=True)
class EigenResult:
    residual: float
    bound: float
    eigenvalue: complex
    M: int
    operator: str


def eigenstate_residual(entry, r, theta, M, su11=False):
    """||a s - z s|| (or ||A s - (z/2) s|| with A = a/2) for the normalized truncated state s.

    Truncation leaves only the last component, -z c_{M-1}; ``bound`` is
    |z| sqrt((|c_{M-1}|^2 + tail) / N) with the state's own tail bound.
    """
    spec = entry.spec
    if spec.name not in ("disc", "logdisc", "canonical"):
        raise ValueError(f"{spec.name}: no annihilation-operator eigenstates")
    z = label_to_z(spec, r, theta)
    st = state_vector(spec, r, theta, M)
    s = st.normalized()
    x, _ = _x_sequence(entry, M)
    sx = np.sqrt(np.asarray(x, dtype=float))
    a_s = np.zeros(M, dtype=complex)
    a_s[:-1] = sx[1:] * s[1:]
    lam = z
    if su11:
        a_s = a_s / 2.0
        lam = z / 2.0
    res = float(np.linalg.norm(a_s - lam * s))
    bound = abs(lam) * math.sqrt((abs(st.coeffs[-1]) ** 2 + st.tail_bound) / st.norm_factor)
    return EigenResult(res, bound, lam, M, "A=a/2" if su11 else "a")


@dataclass(frozen=True)
class NogoResult:
    ratios: np.ndarray
    raw: np.ndarray
    dispersion: float
    raw_dispersion: float
    z: tuple


def _dispersion(v):
    v = np.asarray(v)
    return float(np.max(np.abs(v[:, None] - v[None, :]))) if v.size else 0.0


def annihilator_nogo_scan(entry, r, theta, m_max):
    """Coefficient ratios h_m = Phi_{m+1}(z) / Phi_m(z) for m <= m_max.

    An operator a phi_m = g(m) phi_{m-1} with a|z> = f(z)|z> needs
    f = h_m g(m+1) sqrt(rho(m)/rho(m+1)) for every m; with the choice
    g(m+1) = sqrt(x_{m+1}) that is f = h_m, so the dispersion of h_m over m
    measures the obstruction.  ``raw`` holds the g = 1 values
    h_m sqrt(rho(m)/rho(m+1)).
    """
    spec = entry.spec
    check_label(spec, r)
    R = spec.radial(m_max + 2, np.array([float(r)]))[:, 0]
    phases = spec.phases(m_max + 2)
    if spec.name == "power" and r == 1.0 and math.fmod(theta, 2 * math.pi) == 0.0:
        raise RatioUndefined("power: at z = 1 every ratio is 1 (non-generic label)")
    if np.any(R[: m_max + 1] == 0) or not np.all(np.isfinite(R)):
        bad = int(np.argmax((R == 0) | ~np.isfinite(R)))
        raise RatioUndefined(f"{spec.name}: Phi_{bad} vanishes or overflows at r={r:g}")
    h = np.empty(m_max + 1, dtype=complex)
    raw = np.empty(m_max + 1, dtype=complex)
    for m in range(m_max + 1):
        dn = phases[m + 1] - phases[m]
        ph = complex(math.cos(math.fmod(dn * theta, 2 * math.pi)), math.sin(math.fmod(dn * theta, 2 * math.pi)))
        h[m] = R[m + 1] / R[m] * ph
        raw[m] = h[m] * math.exp(0.5 * (spec.log_rho(m) - spec.log_rho(m + 1)))
    return NogoResult(h, raw, _dispersion(h), _dispersion(raw), (float(r), float(theta)))
