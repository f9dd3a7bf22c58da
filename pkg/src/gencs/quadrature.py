"""Adaptive Gauss-Kronrod quadrature on radial domains and moment-matrix assembly."""
from __future__ import annotations

import heapq
import math
from dataclasses import dataclass, field

import numpy as np

from .core import check_mode
from .errors import NoConvergence

# 15-point Kronrod extension of the 7-point Gauss rule (nodes on [-1, 1], symmetric half)
_XGK = np.array([
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000,
])
_WGK = np.array([
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714,
])
_WG = np.array([
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327,
])
NODES = np.concatenate([-_XGK[:-1], _XGK[::-1]])
KRONROD_W = np.concatenate([_WGK[:-1], _WGK[::-1]])
GAUSS_W = np.zeros(15)
GAUSS_W[[1, 3, 5]] = _WG[:3]
GAUSS_W[7] = _WG[3]
GAUSS_W[[13, 11, 9]] = _WG[:3]

MAX_EVALS = 1_000_000


@dataclass(frozen=True)
class QuadResult:
    """Integral value with its |Kronrod - Gauss| error estimate; arrays for vector integrands."""

    value: object
    abs_error_est: object
    evaluations: int


@dataclass(frozen=True)
class MomentMatrix:
    dim: int
    entries: np.ndarray
    diag_error: np.ndarray
    mode: str
    spot_checks: dict = field(default_factory=dict)
    evaluations: int = 0

    @property
    def target(self):
        return np.eye(self.dim)

    def max_deviation(self):
        return float(np.max(np.abs(self.entries - np.eye(self.dim))))


def _panel(f, a, b, ncomp):
    c = 0.5 * (a + b)
    h = 0.5 * (b - a)
    fx = np.asarray(f(c + h * NODES), dtype=float).reshape(15, ncomp)
    K = h * (KRONROD_W @ fx)
    G = h * (GAUSS_W @ fx)
    return K, np.abs(K - G)


def integrate(f, a, b, tol=1e-10, abs_tol=1e-300, breakpoints=(), max_evals=MAX_EVALS):
    """Adaptive G7/K15 integration of a vectorised rule ``f`` over (a, b).

    ``f`` maps a 1-D array of abscissae to values of shape ``(n,)`` or
    ``(n, k)``.  An infinite upper limit is mapped to (0, 1) through
    t = (r - a) / (1 + r - a).  Panels are bisected globally, worst first,
    until the summed error estimate of every component is at most
    ``tol * |I| + abs_tol``.  The result is summed in panel order so it is
    independent of the refinement history.
    """
    if not b > a:
        raise ValueError("integrate requires b > a")
    cuts = sorted(p for p in breakpoints if a < p < b)
    if math.isinf(b):
        g = f

        def f(t):
            return _mapped(g, a, t)

        cuts = [(p - a) / (1.0 + p - a) for p in cuts]
        lo, hi = 0.0, 1.0
    else:
        lo, hi = float(a), float(b)
    edges = [lo] + cuts + [hi]
    probe = np.asarray(f(np.array([0.5 * (edges[0] + edges[1])])), dtype=float)
    ncomp = int(probe.size)
    shape = probe.shape[1:]
    panels = {}
    evals = 0
    for left, right in zip(edges[:-1], edges[1:]):
        K, E = _panel(f, left, right, ncomp)
        panels[(left, right)] = (K, E)
        evals += 15
    total = sum(v[0] for v in panels.values())
    err = sum(v[1] for v in panels.values())
    heap = []

    def push(key, E, total_now):
        scale = tol * np.abs(total_now) + abs_tol
        heapq.heappush(heap, (-float(np.max(E / scale)), key))

    for key, (K, E) in panels.items():
        push(key, E, total)
    while np.any(err > tol * np.abs(total) + abs_tol):
        if evals >= max_evals:
            raise NoConvergence(f"quadrature exceeded {max_evals} evaluations (error estimate {float(np.max(err)):.3g})")
        if not heap:
            break
        _, key = heapq.heappop(heap)
        left, right = key
        mid = 0.5 * (left + right)
        if not (left < mid < right) or (right - left) < 4e-16 * max(abs(left), abs(right), 1e-300):
            continue
        K0, E0 = panels.pop(key)
        K1, E1 = _panel(f, left, mid, ncomp)
        K2, E2 = _panel(f, mid, right, ncomp)
        evals += 30
        panels[(left, mid)] = (K1, E1)
        panels[(mid, right)] = (K2, E2)
        total = total - K0 + K1 + K2
        err = err - E0 + E1 + E2
        push((left, mid), E1, total)
        push((mid, right), E2, total)
    keys = sorted(panels)
    value = np.zeros(ncomp)
    error = np.zeros(ncomp)
    for key in keys:
        value = value + panels[key][0]
        error = error + panels[key][1]
    if shape == ():
        return QuadResult(float(value[0]), float(error[0]), evals)
    return QuadResult(value.reshape(shape), error.reshape(shape), evals)


def _mapped(g, a, t):
    s = 1.0 - t
    vals = np.asarray(g(a + t / s), dtype=float)
    jac = 1.0 / (s * s)
    if vals.ndim == 1:
        return vals * jac
    return vals * jac[:, None]


# ---------------------------------------------------------------------------
# angular helpers
# ---------------------------------------------------------------------------

def aliasing_free_nodes(phases, minimum=8):
    """Smallest P >= minimum such that the phases are distinct modulo P.

    Then the P-point trapezoid rule integrates every exp(i (n_a - n_b) theta)
    with n_a != n_b to zero exactly, and the diagonal terms exactly.
    """
    phases = [int(n) for n in phases]
    P = max(minimum, 1)
    while len({n % P for n in phases}) < len(set(phases)):
        P += 1
    return P


def angular_nodes(P):
    return 2.0 * math.pi * np.arange(P) / P


# ---------------------------------------------------------------------------
# radial integrals of coefficient quadratic forms
# ---------------------------------------------------------------------------

def radial_integral(spec, integrand, ms, tol=1e-10, abs_tol=1e-300, M=None):
    """Integrate ``integrand(C, u)`` over the family's radial variable.

    ``C`` is the (M, n) table of measure-weighted coefficients at the nodes
    ``u``; ``ms`` lists the indices that matter (for breakpoints).
    """
    plan = spec.quad
    M = (max(ms) + 1) if M is None else M

    def f(us):
        return integrand(plan.coeffs(M, us), us)

    return integrate(f, plan.u_min, plan.u_max, tol=tol, abs_tol=abs_tol, breakpoints=plan.breakpoints(list(ms)))


def _pair(ca, cb, mode):
    return ca * cb if mode == "signed" else ca * np.conj(cb)


def offdiagonal_2d(spec, m, l, mode="modulus", tol=1e-10, abs_tol=1e-14):
    """2-D quadrature of the (m, l) moment element, angular integral done adaptively too."""
    check_mode(mode)
    n_m, n_l = spec.phases(max(m, l) + 1)[m], spec.phases(max(m, l) + 1)[l]
    dn = float(n_m - n_l)
    top = max(m, l) + 1

    def radial_part(C, us):
        prod = _pair(C[m], C[l], mode)

        def ang(th):
            e = np.exp(1j * dn * th)[:, None] * prod[None, :] / (2.0 * math.pi)
            return np.concatenate([e.real, e.imag], axis=1)

        inner = integrate(ang, 0.0, 2.0 * math.pi, tol=tol, abs_tol=1e-16 * (1.0 + float(np.max(np.abs(prod)))))
        vals = np.asarray(inner.value)
        n = prod.shape[0]
        return np.stack([vals[:n], vals[n:]], axis=1)

    res = radial_integral(spec, radial_part, [m, l], tol=tol, abs_tol=abs_tol, M=top)
    return complex(res.value[0], res.value[1]), float(np.max(res.abs_error_est)), res.evaluations


def moment_matrix(entry, dim, tol=1e-10, mode="signed", spot_pairs=((0, 1), (2, 5))):
    """Resolution-of-identity matrix D[m][n] = int c_m c_n w dr dtheta / 2pi.

    Diagonal entries are integrated radially (all at once, per-component
    error control); off-diagonal entries vanish by angular orthogonality and
    are additionally computed by 2-D quadrature for ``spot_pairs``.
    """
    check_mode(mode)
    if dim > 32:
        raise ValueError("moment_matrix supports dim <= 32")
    spec = entry.spec
    ms = list(range(dim))

    def diag(C, us):
        if mode == "signed":
            return (C * C).real.T
        return (np.abs(C) ** 2).T

    res = radial_integral(spec, diag, ms, tol=tol, M=dim)
    D = np.diag(np.asarray(res.value, dtype=float))
    spots = {}
    evals = res.evaluations
    for m, l in spot_pairs:
        if m < dim and l < dim:
            v, e, n = offdiagonal_2d(spec, m, l, mode=mode, tol=tol)
            spots[(m, l)] = v
            evals += n
    return MomentMatrix(dim, D, np.asarray(res.abs_error_est, dtype=float), mode, spots, evals)
