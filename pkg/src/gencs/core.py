"""Family abstraction plus the state, normalization and kernel machinery.

Every family stores its coefficients as ``c_m(r) = R_m(r) / sqrt(rho(m))`` with
the angular factor ``exp(i n_m theta)`` kept separate.  Two pairings exist:

``modulus``
    the Hilbert-space pairing ``conj(c_m(r)) c_m(r')``; ``N = sum |c_m|^2``.
``signed``
    the bilinear pairing ``c_m(r) c_m(r')`` of the radial factors, so that
    ``N = sum c_m^2 = sum s_m / rho(m)`` keeps the sign of a negative radicand
    ``s_m``.  Only the phase is conjugated.

For families whose radial factors are real and nonnegative up to sign
(``modes_coincide``) both pairings agree.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .errors import DomainError, NoConvergence, NormalizationVanishes

MODES = ("signed", "modulus")
VANISH_THRESHOLD = 1e-300
DEFAULT_SERIES_TOL = 1e-15
DEFAULT_BUDGET = 10_000
_NEGLIGIBLE_RUN = 5


@dataclass(frozen=True)
class QuadPlan:
    """How to integrate radial quadratic forms for a family.

    ``coeffs(M, u)`` returns ``c_m(r(u)) * sqrt(w(r(u)) * dr/du)`` with shape
    ``(M, len(u))`` so that ``int F(c(r)) w(r) dr = int F(coeffs(u)) du``.
    ``breakpoints(ms)`` lists interior break points in ``u`` suited to the
    active indices (oscillatory families use it to bound panel widths).
    """

    u_min: float
    u_max: float
    coeffs: Callable
    breakpoints: Callable
    u_to_r: Callable


@dataclass(frozen=True)
class FamilySpec:
    """Complete description of one coherent-state family.

    ``coeff_table(M, rs)`` gives ``c_m(r)`` (complex, principal square roots
    where the family takes them); ``phases(M)`` the integer angular
    frequencies ``n_m``; ``weight(rs)`` the radial density ``w`` so that
    ``dmu = N(r) w(r) dr dtheta / 2pi``.
    """

    name: str
    params: tuple
    r_min: float
    r_max: float
    closed_max: bool
    coeff_table: Callable
    phases: Callable
    log_rho: Callable
    weight: Callable
    radial: Callable
    quad: QuadPlan
    series_start: Callable = lambda r: 0
    modes_coincide: bool = True
    vanishes_at_rmin: bool = False
    modulus_diverges: bool = False
    radicand: Optional[Callable] = None
    signed_normalization: Optional[Callable] = None
    max_terms: int = DEFAULT_BUDGET
    normalization_rule: str = "series"
    notes: tuple = field(default_factory=tuple)

    @property
    def param_dict(self):
        return dict(self.params)

    def rho(self, m):
        """rho(m); may overflow to inf for fast-growing weights (see ``log_rho``)."""
        lr = self.log_rho(m)
        return math.exp(lr) if lr < 709.0 else math.inf

    def phi(self, m, r, theta):
        """Coefficient function Phi_m(r, theta) = R_m(r) exp(i n_m theta)."""
        check_label(self, r)
        R = complex(self.radial(m + 1, np.array([float(r)]))[m, 0])
        n = self.phases(m + 1)[m]
        return R * complex(np.exp(1j * _reduce_angle(n, theta)))

    def radial_measure_density(self, r, mode="modulus", tol=DEFAULT_SERIES_TOL):
        """Full radial density N(r) w(r) of dmu (angular part uniform)."""
        return normalization(self, r, tol=tol, mode=mode) * float(self.weight(np.array([float(r)]))[0])

    def label_description(self):
        hi = "]" if self.closed_max else ")"
        return f"r in ({self.r_min:g}, {self.r_max:g}{hi}, theta in [0, 2pi)"


@dataclass(frozen=True)
class SeriesSum:
    value: float
    tail_bound: float
    terms: int
    mode: str


@dataclass(frozen=True)
class TruncatedState:
    """First M coefficients of |Phi(z)> before normalization, plus the discarded mass.

    ``radial`` holds c_m(r); ``coeffs`` includes the phase.  ``tail_bound``
    bounds ``sum_{m >= M} |c_m|^2`` and is ``inf`` when that series diverges.
    """

    family: str
    r: float
    theta: float
    radial: np.ndarray
    phases: tuple
    norm_factor: float
    tail_bound: float
    mode: str

    @property
    def M(self):
        return self.radial.shape[0]

    @property
    def phase_factors(self):
        return np.exp(1j * np.array([_reduce_angle(n, self.theta) for n in self.phases]))

    @property
    def coeffs(self):
        return self.radial * self.phase_factors

    def normalized(self):
        return self.coeffs / math.sqrt(self.norm_factor)


@dataclass(frozen=True)
class KernelValue:
    value: complex
    tail_bound: float
    M: int
    mode: str


def _reduce_angle(n, theta):
    # n can be a huge python int (power family); the coefficient is already zero there
    if abs(n) > 2**53:
        return 0.0
    return math.fmod(n * theta, 2.0 * math.pi)


def phase_factors(spec, M, theta):
    return np.exp(1j * np.array([_reduce_angle(n, theta) for n in spec.phases(M)]))


def check_mode(mode):
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}, got {mode!r}")


def check_label(spec, r):
    r = float(r)
    if not math.isfinite(r):
        raise DomainError(f"{spec.name}: label radius {r!r} is not finite")
    if r == spec.r_min and spec.vanishes_at_rmin:
        raise NormalizationVanishes(f"{spec.name}: N(r) = 0 at r = {r:g}")
    upper_ok = r <= spec.r_max if spec.closed_max else r < spec.r_max
    if not (r > spec.r_min and upper_ok):
        raise DomainError(f"{spec.name}: r = {r!r} outside {spec.label_description()}")
    return r


def _terms(spec, M, r, mode):
    c = spec.coeff_table(M, np.array([r]))[:, 0]
    if mode == "modulus":
        return np.abs(c) ** 2
    return (c * c).real


def sum_series(spec, r, mode="modulus", tol=DEFAULT_SERIES_TOL, start=0, scale=None, budget=None):
    """Sum ``sum_{m >= start}`` of the normalization terms at radius r.

    Stops once five consecutive terms are each below ``tol`` times the
    reference (``scale`` if given, else the running sum) and the family's
    ``series_start(r)`` index has been passed.  The tail beyond the last
    term is bounded by a geometric majorant built from the largest ratio
    among the last terms (the term ratios of every family here are
    eventually nonincreasing).
    """
    budget = spec.max_terms if budget is None else budget
    first_ok = max(start, spec.series_start(r))
    total = 0.0
    run = 0
    M = max(64, 2 * start)
    done = start
    recent = []
    while True:
        top = min(M, start + budget)
        vals = _terms(spec, top, r, mode)
        for m in range(done, top):
            t = float(vals[m])
            total += t
            recent.append(abs(t))
            if len(recent) > _NEGLIGIBLE_RUN + 1:
                recent.pop(0)
            ref = abs(scale) if scale is not None else abs(total)
            run = run + 1 if abs(t) <= tol * ref else 0
            if m >= first_ok and run >= _NEGLIGIBLE_RUN:
                tail = _geometric_tail(recent)
                if tail <= tol * ref:
                    return SeriesSum(total, tail, m + 1, mode)
        done = top
        if top >= start + budget:
            raise NoConvergence(
                f"{spec.name}: {mode} normalization series at r={r:g} did not settle within {budget} terms"
            )
        M *= 2


def _geometric_tail(recent):
    last = recent[-1]
    if last == 0.0:
        return 0.0
    q = 0.0
    for a, b in zip(recent[:-1], recent[1:]):
        if a == 0.0:
            return math.inf
        q = max(q, b / a)
    if q >= 1.0:
        return math.inf
    return last * q / (1.0 - q)


def _diverges(spec, mode):
    # known analytically; sum_series on such a family exhausts its budget instead
    return mode == "modulus" and spec.modulus_diverges


def normalization_series(spec, r, tol=DEFAULT_SERIES_TOL, mode="modulus"):
    """N(r) with its error bound, as a :class:`SeriesSum`."""
    check_mode(mode)
    r = check_label(spec, r)
    if mode == "signed" and spec.signed_normalization is not None:
        res = spec.signed_normalization(r, tol)
    elif _diverges(spec, mode):
        raise NoConvergence(f"{spec.name}: the modulus normalization series diverges")
    else:
        res = sum_series(spec, r, mode=mode, tol=tol)
    if not res.value >= VANISH_THRESHOLD:
        raise NormalizationVanishes(f"{spec.name}: N(r) = {res.value:.3g} at r = {r:g} ({mode} mode)")
    return res


def normalization(spec, r, tol=DEFAULT_SERIES_TOL, mode="modulus"):
    """N(r) = sum |Phi_m|^2 / rho(m) (modulus) or sum s_m / rho(m) (signed)."""
    return normalization_series(spec, r, tol=tol, mode=mode).value


def tail_mass(spec, r, M, scale, tol=DEFAULT_SERIES_TOL):
    """Bound on sum_{m >= M} |c_m(r)|^2, or inf when that series does not settle."""
    if _diverges(spec, "modulus"):
        return math.inf
    try:
        res = sum_series(spec, r, mode="modulus", tol=tol, start=M, scale=scale, budget=spec.max_terms)
    except NoConvergence:
        return math.inf
    return res.value + res.tail_bound


def state_vector(spec, r, theta, M, mode="modulus", tol=DEFAULT_SERIES_TOL):
    """Truncated |Phi(z)> at z = (r, theta): first M coefficients, N and tail bound."""
    if M < 1:
        raise ValueError("M must be positive")
    check_mode(mode)
    r = check_label(spec, r)
    N = normalization(spec, r, tol=tol, mode=mode)
    radial = spec.coeff_table(M, np.array([r]))[:, 0].astype(complex)
    tail = tail_mass(spec, r, M, scale=N, tol=tol)
    return TruncatedState(spec.name, r, float(theta), radial, tuple(spec.phases(M)), N, tail, mode)


def overlap_with_vector(spec, state, phi):
    """<Phi(z)|phi> for the normalized state; in signed mode only the phase is conjugated."""
    phi = np.asarray(phi, dtype=complex)
    if phi.shape[0] > state.M:
        raise ValueError("phi is longer than the truncated state")
    n = phi.shape[0]
    rad = state.radial[:n]
    if state.mode == "modulus":
        rad = np.conj(rad)
    ph = np.conj(state.phase_factors[:n])
    return complex(np.sum(rad * ph * phi)) / math.sqrt(state.norm_factor)


def _head_and_norm(spec, r, mode, tol):
    """Normalization to divide by; falls back to the truncated head when the series diverges."""
    try:
        return normalization(spec, r, tol=tol, mode=mode), False
    except NoConvergence:
        return None, True


def kernel(spec, z, z_prime, M=64, mode="modulus", tail_target=1e-12, max_M=4096, tol=DEFAULT_SERIES_TOL):
    """Reproducing kernel K(z, z') = <Phi(z)|Phi(z')>.

    M is doubled until the Cauchy-Schwarz bound sqrt(T T' / (N N')) on the
    discarded terms drops below ``tail_target`` or ``max_M`` is reached.
    When N itself diverges (modulus mode for the Laguerre family) the
    truncated head sum is used as normalization and the tail is reported as
    infinite.
    """
    check_mode(mode)
    (r1, t1), (r2, t2) = z, z_prime
    r1, r2 = check_label(spec, r1), check_label(spec, r2)
    N1, div1 = _head_and_norm(spec, r1, mode, tol)
    N2, div2 = _head_and_norm(spec, r2, mode, tol)
    while True:
        c1 = spec.coeff_table(M, np.array([r1]))[:, 0]
        c2 = spec.coeff_table(M, np.array([r2]))[:, 0]
        ph = phase_factors(spec, M, t2) * np.conj(phase_factors(spec, M, t1))
        head1 = float(np.sum(np.abs(c1) ** 2))
        head2 = float(np.sum(np.abs(c2) ** 2))
        n1 = head1 if div1 else N1
        n2 = head2 if div2 else N2
        if div1 or div2:
            tail = math.inf
        else:
            T1 = tail_mass(spec, r1, M, scale=head1, tol=tol)
            T2 = tail_mass(spec, r2, M, scale=head2, tol=tol)
            tail = math.sqrt(T1 * T2 / abs(n1 * n2)) if math.isfinite(T1 * T2) else math.inf
        if tail < tail_target or M >= max_M or not math.isfinite(tail):
            break
        M *= 2
    pair = np.conj(c1) * c2 if mode == "modulus" else c1 * c2
    value = complex(np.sum(pair * ph)) / math.sqrt(n1 * n2)
    return KernelValue(value, tail, M, mode)
