"""Constructors for the coherent-state families.

Each constructor returns a :class:`FamilyCatalogEntry` holding the
:class:`~gencs.core.FamilySpec`, a closed-form oracle for the diagonal
radial moment ``int R_m(r)^2 w(r) dr`` and short notes.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np
from scipy.special import gammaln

from . import _kernels
from .core import FamilySpec, QuadPlan, SeriesSum
from .errors import NoConvergence, ParameterError
from .specfun import bessel_half_table, laguerre_table

LAGUERRE_ABEL_MAX_TERMS = 100_000


@dataclass(frozen=True)
class FamilyCatalogEntry:
    spec: FamilySpec
    log_moment_oracle: Callable
    notes: tuple = field(default_factory=tuple)

    def radial_moment_oracle(self, m):
        """Closed-form value of int R_m^2 w dr (may overflow to inf for the power family)."""
        lv = self.log_moment_oracle(m)
        return math.exp(lv) if lv < 709.0 else math.inf

    def moment_target(self, m):
        """Oracle divided by rho(m): the expected diagonal of the moment matrix."""
        return math.exp(self.log_moment_oracle(m) - self.spec.log_rho(m))

    @property
    def name(self):
        return self.spec.name


def _as_rows(M, rs):
    rs = np.atleast_1d(np.asarray(rs, dtype=float))
    return np.arange(M, dtype=float)[:, None], rs[None, :]


def _merge_breaks(points, lo, hi):
    pts = sorted({float(p) for p in points if lo < p < hi})
    out = []
    for p in pts:
        if not out or p - out[-1] > 1e-9 * max(1.0, abs(p)):
            out.append(p)
    return out


# ---------------------------------------------------------------------------
# power iterate: T(z) = z^k, Phi_m = z^(k^m)
# ---------------------------------------------------------------------------

def make_power_iterate(k=2):
    """Family built from the iterates of z -> z^k (integer k >= 2)."""
    if int(k) != k or k < 2:
        raise ParameterError(f"power family requires integer k >= 2, got k={k!r}")
    k = int(k)

    def exponents(M):
        with np.errstate(over="ignore"):
            return np.power(float(k), np.arange(M, dtype=float))

    def log_coeff(M, rs):
        K = exponents(M)[:, None]
        lr = np.log(np.atleast_1d(np.asarray(rs, dtype=float)))[None, :]
        with np.errstate(invalid="ignore", over="ignore"):
            out = K * lr - 0.5 * gammaln(K + 1.0)
        # K = inf only where the term is far below underflow (r^2 << k^m)
        return np.where(np.isfinite(K), out, -np.inf)

    def coeff_table(M, rs):
        return np.exp(log_coeff(M, rs)).astype(complex)

    def radial(M, rs):
        K = exponents(M)[:, None]
        with np.errstate(over="ignore"):
            return np.power(np.atleast_1d(rs)[None, :], K).astype(complex)

    def log_rho(m):
        return math.lgamma(float(k) ** m + 1.0)

    def weight(rs):
        rs = np.asarray(rs, dtype=float)
        return 2.0 * rs * np.exp(-rs * rs)

    def series_start(r):
        m = 0
        while float(k) ** m <= r * r + 1.0:
            m += 1
        return m

    def quad_coeffs(M, us):
        us = np.asarray(us, dtype=float)
        lw = 0.5 * (np.log(2.0 * us) - us * us)
        return np.exp(log_coeff(M, us) + lw[None, :]).astype(complex)

    def breakpoints(ms):
        pts = []
        for m in ms:
            c = math.sqrt(float(k) ** m + 0.5)
            pts += [c - 12.0, c, c + 12.0]
        return _merge_breaks(pts, 0.0, math.inf)

    spec = FamilySpec(
        name="power",
        params=(("k", k),),
        r_min=0.0,
        r_max=math.inf,
        closed_max=False,
        coeff_table=coeff_table,
        phases=lambda M: [k**m for m in range(M)],
        log_rho=log_rho,
        weight=weight,
        radial=radial,
        quad=QuadPlan(0.0, math.inf, quad_coeffs, breakpoints, lambda u: u),
        series_start=series_start,
        vanishes_at_rmin=True,
    )
    notes = (
        "rho(m) = Gamma(k^m + 1), evaluated in log space",
        "w(r) = 2 r exp(-r^2); diagonal moment by t = r^2",
    )
    return FamilyCatalogEntry(spec, lambda m: math.lgamma(float(k) ** m + 1.0), notes)


# ---------------------------------------------------------------------------
# canonical: rho(m) = m!, N = exp(r^2); reference family for sanity checks
# ---------------------------------------------------------------------------

def make_canonical():
    """Harmonic-oscillator coherent states z^m / sqrt(m!)."""

    def log_coeff(M, rs):
        m, r = _as_rows(M, rs)
        return m * np.log(r) - 0.5 * gammaln(m + 1.0)

    def coeff_table(M, rs):
        return np.exp(log_coeff(M, rs)).astype(complex)

    def radial(M, rs):
        m, r = _as_rows(M, rs)
        return (r**m).astype(complex)

    def quad_coeffs(M, us):
        us = np.asarray(us, dtype=float)
        lw = 0.5 * (np.log(2.0 * us) - us * us)
        return np.exp(log_coeff(M, us) + lw[None, :]).astype(complex)

    def breakpoints(ms):
        pts = []
        for m in ms:
            c = math.sqrt(m + 0.5)
            pts += [c - 12.0, c, c + 12.0]
        return _merge_breaks(pts, 0.0, math.inf)

    spec = FamilySpec(
        name="canonical",
        params=(),
        r_min=0.0,
        r_max=math.inf,
        closed_max=False,
        coeff_table=coeff_table,
        phases=lambda M: list(range(M)),
        log_rho=lambda m: math.lgamma(m + 1.0),
        weight=lambda rs: 2.0 * np.asarray(rs) * np.exp(-np.asarray(rs) ** 2),
        radial=radial,
        quad=QuadPlan(0.0, math.inf, quad_coeffs, breakpoints, lambda u: u),
        series_start=lambda r: int(math.ceil(r * r)) + 1,
    )
    return FamilyCatalogEntry(spec, lambda m: math.lgamma(m + 1.0), ("N(r) = exp(r^2)",))


# ---------------------------------------------------------------------------
# Laguerre: Phi_m = e^{i m theta} sqrt(L_m^alpha(r)), rho(m) = m + 1
# ---------------------------------------------------------------------------

def _log_gamma_tail_bound(alpha, X):
    # Gamma(alpha, X) <= X^(alpha-1) e^-X / (1 - (alpha-1)/X) for alpha >= 1, X > alpha - 1
    return (alpha - 1.0) * math.log(X) - X - math.log1p(-(alpha - 1.0) / X)


def laguerre_signed_sum(alpha, r, tol):
    """Abel sum of sum_m L_m^alpha(r) / (m + 1).

    The series diverges for every r > 0; its Abel limit is evaluated as
    S(t) = sum L_m t^(m+1) / (m+1) at t = 1 - eps.  The damping error equals
    e^r r^-alpha Gamma(alpha, r/eps), which an elementary bound on the
    incomplete gamma tail keeps below 1e-3 * tol relative.
    """
    X = r + 30.0
    for _ in range(200):
        eps = min(0.5, r / X)
        X = r / eps
        S, trunc, terms, ok = _kernels.abel_laguerre_sum(float(alpha), float(r), 1.0 - eps, tol, 10, LAGUERRE_ABEL_MAX_TERMS)
        if not ok:
            raise NoConvergence(f"laguerre: Abel-damped series at r={r:g} did not settle within {terms} terms")
        log_damp = r - alpha * math.log(r) + _log_gamma_tail_bound(alpha, X)
        damp = math.exp(log_damp) if log_damp < 709 else math.inf
        if damp <= 1e-3 * tol * abs(S):
            return SeriesSum(S, trunc + damp, int(terms), "signed")
        X += 10.0
    raise NoConvergence(f"laguerre: could not bound the Abel damping error at r={r:g}")


def make_laguerre(alpha=2.0, beta=None):
    """Laguerre family; the measure exponent beta must equal alpha - 1."""
    alpha = float(alpha)
    beta = alpha - 1.0 if beta is None else float(beta)
    if not beta > 0:
        raise ParameterError(f"alpha: laguerre family requires alpha > 1 (beta = alpha - 1 > 0), got alpha={alpha!r}")
    if abs(alpha - beta - 1.0) > 1e-12:
        raise ParameterError(f"laguerre family requires alpha - beta = 1, got alpha={alpha!r}, beta={beta!r}")
    lgb = math.lgamma(beta)

    def radicand(M, rs):
        return laguerre_table(M, alpha, rs)

    def coeff_table(M, rs):
        s = radicand(M, rs) / np.arange(1.0, M + 1.0)[:, None]
        return np.sqrt(s.astype(complex))

    def radial(M, rs):
        return np.sqrt(radicand(M, rs).astype(complex))

    def weight(rs):
        rs = np.asarray(rs, dtype=float)
        return np.exp((beta - 1.0) * np.log(rs) - rs - lgb)

    def u_to_r(us):
        return np.asarray(us, dtype=float) ** (1.0 / beta)

    def quad_coeffs(M, us):
        r = u_to_r(us)
        # r^(beta-1) dr = ds / beta
        return coeff_table(M, r) * np.exp(0.5 * (-r - lgb - math.log(beta)))[None, :]

    def breakpoints(ms):
        top = 4.0 * max(ms) + 2.0 * alpha + 60.0
        rpts = [1.0, 2.0, 5.0] + list(np.arange(10.0, top, 10.0))
        return _merge_breaks([p**beta for p in rpts], 0.0, math.inf)

    def log_oracle(m):
        # int x^(beta-1) e^-x L_m^alpha dx = Gamma(alpha-beta+m+1) Gamma(beta) / (m! Gamma(alpha-beta+1)), divided by Gamma(beta)
        return math.lgamma(alpha - beta + m + 1.0) - math.lgamma(m + 1.0) - math.lgamma(alpha - beta + 1.0)

    spec = FamilySpec(
        name="laguerre",
        params=(("alpha", alpha), ("beta", beta)),
        r_min=0.0,
        r_max=math.inf,
        closed_max=False,
        coeff_table=coeff_table,
        phases=lambda M: list(range(M)),
        log_rho=lambda m: math.log(m + 1.0),
        weight=weight,
        radial=radial,
        quad=QuadPlan(0.0, math.inf, quad_coeffs, breakpoints, u_to_r),
        modes_coincide=False,
        modulus_diverges=True,
        radicand=radicand,
        signed_normalization=lambda r, tol: laguerre_signed_sum(alpha, r, tol),
        normalization_rule="closed_form(abel)",
    )
    notes = (
        "signed N is the Abel limit of sum L_m^alpha(r)/(m+1) = e^r r^-alpha Gamma(alpha, r)",
        "the modulus series sum |L_m^alpha(r)|/(m+1) diverges",
    )
    return FamilyCatalogEntry(spec, log_oracle, notes)


# ---------------------------------------------------------------------------
# Bessel: Phi_m = e^{i m theta} sqrt(r^m J_{m+1/2}(r)), rho(m) = m!
# ---------------------------------------------------------------------------

def make_bessel():
    """Half-integer Bessel family with N(r) = I_{1/2}(r) in the signed convention."""

    def radicand(M, rs):
        m, r = _as_rows(M, rs)
        return bessel_half_table(M, rs) * r**m

    def coeff_table(M, rs):
        m, r = _as_rows(M, rs)
        s = bessel_half_table(M, rs) * np.exp(m * np.log(r) - gammaln(m + 1.0))
        return np.sqrt(s.astype(complex))

    def radial(M, rs):
        return np.sqrt(radicand(M, rs).astype(complex))

    def weight(rs):
        rs = np.asarray(rs, dtype=float)
        return np.sqrt(2.0 * math.pi * rs) * np.exp(-rs)

    def quad_coeffs(M, us):
        us = np.asarray(us, dtype=float)
        return coeff_table(M, us) * (np.sqrt(weight(us)))[None, :]

    def breakpoints(ms):
        # panels no wider than half the asymptotic period 2 pi
        cutoff = 60.0 + 3.0 * max(ms)
        return list(np.arange(math.pi, cutoff, math.pi))

    def log_oracle(m):
        # int e^-ax x^p J_p(bx) dx = (2b)^p Gamma(p + 1/2) / (sqrt(pi) (a^2 + b^2)^(p + 1/2)), a = b = 1, p = m + 1/2; times sqrt(2 pi)
        p = m + 0.5
        return 0.5 * math.log(2.0 * math.pi) + p * math.log(2.0) + math.lgamma(p + 0.5) - 0.5 * math.log(math.pi) - (p + 0.5) * math.log(2.0)

    spec = FamilySpec(
        name="bessel",
        params=(),
        r_min=0.0,
        r_max=math.inf,
        closed_max=False,
        coeff_table=coeff_table,
        phases=lambda M: list(range(M)),
        log_rho=lambda m: math.lgamma(m + 1.0),
        weight=weight,
        radial=radial,
        quad=QuadPlan(0.0, math.inf, quad_coeffs, breakpoints, lambda u: u),
        series_start=lambda r: int(math.ceil(r)) + 2,
        modes_coincide=False,
        vanishes_at_rmin=True,
        radicand=radicand,
        normalization_rule="closed_form(i_half)",
    )
    notes = ("signed N(r) = I_{1/2}(r)", "w(r) = sqrt(2 pi r) exp(-r)")
    return FamilyCatalogEntry(spec, log_oracle, notes)


# ---------------------------------------------------------------------------
# disc of radius y: Phi_m = (y - r)^m e^{i m theta}, rho(m) = (2m)! y^(2m+nu) / (nu+1)_{2m}
# ---------------------------------------------------------------------------

DISC_MEASURES = ("scaled", "bare")


def make_disc(y=1.0, nu=1.0, measure="scaled"):
    """Disc family.  ``measure='scaled'`` uses lambda(r) = nu r^(nu-1), ``'bare'`` uses r^(nu-1)."""
    y, nu = float(y), float(nu)
    if not y > 0:
        raise ParameterError(f"disc family requires y > 0, got y={y!r}")
    if not nu > 0:
        raise ParameterError(f"disc family requires nu > 0, got nu={nu!r}")
    if measure not in DISC_MEASURES:
        raise ParameterError(f"disc measure must be one of {DISC_MEASURES}, got {measure!r}")
    c_lam = nu if measure == "scaled" else 1.0
    ly = math.log(y)

    def log_rho(m):
        return math.lgamma(2 * m + 1.0) + (2 * m + nu) * ly - (math.lgamma(nu + 1.0 + 2 * m) - math.lgamma(nu + 1.0))

    def log_rho_rows(M):
        m = np.arange(M, dtype=float)
        return gammaln(2 * m + 1.0) + (2 * m + nu) * ly - (gammaln(nu + 1.0 + 2 * m) - math.lgamma(nu + 1.0))

    def coeff_table(M, rs):
        m, r = _as_rows(M, rs)
        d = np.maximum(y - r, 0.0)
        with np.errstate(divide="ignore", invalid="ignore"):
            lp = np.where(m > 0, m * np.log(d), 0.0)
        return np.exp(lp - 0.5 * log_rho_rows(M)[:, None]).astype(complex)

    def radial(M, rs):
        m, r = _as_rows(M, rs)
        return ((y - r) ** m).astype(complex)

    def weight(rs):
        return c_lam * np.asarray(rs, dtype=float) ** (nu - 1.0)

    def u_to_r(us):
        return y * np.asarray(us, dtype=float) ** (1.0 / nu)

    jac = math.sqrt(c_lam * y**nu / nu)

    def quad_coeffs(M, us):
        # r = y v^(1/nu) turns c_lam r^(nu-1) dr into (c_lam y^nu / nu) dv
        return coeff_table(M, u_to_r(us)) * jac

    def breakpoints(ms):
        top = 2 * max(ms) + 1
        return _merge_breaks([min(1.0, (j / top) ** nu) for j in (1.0, 4.0, 16.0)], 0.0, 1.0)

    def series_start(r):
        q2 = ((y - r) / y) ** 2
        m = 0
        while q2 * (2 * m + nu + 1) * (2 * m + nu + 2) / ((2 * m + 1) * (2 * m + 2)) >= 1.0 and m < 10**6:
            m += 1
        return m

    def log_oracle(m):
        # beta integral: int_0^y r^(nu-1) (y-r)^(2m) dr = Gamma(2m+1) Gamma(nu) / Gamma(2m+1+nu) y^(2m+nu)
        return math.log(c_lam) + math.lgamma(2 * m + 1.0) + math.lgamma(nu) - math.lgamma(2 * m + 1.0 + nu) + (2 * m + nu) * ly

    spec = FamilySpec(
        name="disc",
        params=(("y", y), ("nu", nu)),
        r_min=0.0,
        r_max=y,
        closed_max=True,
        coeff_table=coeff_table,
        phases=lambda M: list(range(M)),
        log_rho=log_rho,
        weight=weight,
        radial=radial,
        quad=QuadPlan(0.0, 1.0, quad_coeffs, breakpoints, u_to_r),
        series_start=series_start,
        notes=(f"measure={measure}",),
    )
    notes = (f"lambda(r) = {c_lam:g} r^(nu-1)", "diagonal moment = c_lambda / nu")
    return FamilyCatalogEntry(spec, log_oracle, notes)


def disc_normalization_closed_form(y, nu, r):
    """sum (nu+1)_{2m} q^{2m} / (2m)! y^-nu = ((1-q)^(-nu-1) + (1+q)^(-nu-1)) / 2 y^-nu, q = (y - r)/y.

    Even part of the binomial series; independent of the term-by-term sum.
    """
    q = (y - r) / y
    return 0.5 * ((1.0 - q) ** (-nu - 1.0) + (1.0 + q) ** (-nu - 1.0)) * y ** (-nu)


# ---------------------------------------------------------------------------
# logarithmic disc: Phi_m = e^{i m theta} (log r)^m, rho(m) = (2m)!
# ---------------------------------------------------------------------------

LOGDISC_MEASURES = ("corrected", "inverse_square")


def make_logdisc(measure="corrected"):
    """Logarithmic unit-disc family with N(r) = cosh(log r).

    ``measure='corrected'`` uses w(r) = 1, which reproduces the identity;
    ``'inverse_square'`` uses w(r) = r^-2, whose moments diverge.
    """
    if measure not in LOGDISC_MEASURES:
        raise ParameterError(f"logdisc measure must be one of {LOGDISC_MEASURES}, got {measure!r}")
    w_pow = 0.0 if measure == "corrected" else -2.0

    def from_log(M, L):
        m = np.arange(M, dtype=float)[:, None]
        L = np.atleast_1d(L)[None, :]
        with np.errstate(divide="ignore", invalid="ignore"):
            la = np.where(m > 0, m * np.log(np.abs(L)), 0.0)
        sign = np.where(np.mod(m, 2) == 1, np.sign(L), 1.0)
        return (sign * np.exp(la - 0.5 * gammaln(2 * m + 1.0))).astype(complex)

    def coeff_table(M, rs):
        return from_log(M, np.log(np.asarray(rs, dtype=float)))

    def radial(M, rs):
        m, r = _as_rows(M, rs)
        return (np.log(r) ** m).astype(complex)

    def weight(rs):
        return np.asarray(rs, dtype=float) ** w_pow

    def u_to_r(us):
        return np.exp(-np.asarray(us, dtype=float))

    def quad_coeffs(M, us):
        # r = e^-u, dr = e^-u du
        us = np.asarray(us, dtype=float)
        return from_log(M, -us) * np.exp(-0.5 * (1.0 + w_pow) * us)[None, :]

    def breakpoints(ms):
        pts = []
        for m in ms:
            s = math.sqrt(2 * m + 1.0)
            pts += [2 * m - 6 * s, 2 * m, 2 * m + 6 * s, 2 * m + 12 * s + 40]
        return _merge_breaks(pts, 0.0, math.inf)

    def log_oracle(m):
        # Mellin moment int_0^1 (log r)^(2m) r^(s-1) dr = Gamma(2m+1) / s^(2m+1), s = 1 + w_pow
        s = 1.0 + w_pow
        if s <= 0:
            return math.inf
        return math.lgamma(2 * m + 1.0) - (2 * m + 1.0) * math.log(s)

    spec = FamilySpec(
        name="logdisc",
        params=(),
        r_min=0.0,
        r_max=1.0,
        closed_max=True,
        coeff_table=coeff_table,
        phases=lambda M: list(range(M)),
        log_rho=lambda m: math.lgamma(2 * m + 1.0),
        weight=weight,
        radial=radial,
        quad=QuadPlan(0.0, math.inf, quad_coeffs, breakpoints, u_to_r),
        series_start=lambda r: int(math.ceil(abs(math.log(r)) / 2.0)) + 1,
        normalization_rule="closed_form(cosh)",
        notes=(f"measure={measure}",),
    )
    notes = ("N(r) = cosh(log r)", f"w(r) = r^{w_pow:g}")
    return FamilyCatalogEntry(spec, log_oracle, notes)


# ---------------------------------------------------------------------------
# catalog for the command line
# ---------------------------------------------------------------------------

FAMILY_SCHEMAS = {
    "power": {"k": {"type": "int", "default": 2, "constraint": "k >= 2"}},
    "laguerre": {"alpha": {"type": "float", "default": 2.0, "constraint": "alpha > 1; beta = alpha - 1"}},
    "bessel": {},
    "disc": {
        "y": {"type": "float", "default": 1.0, "constraint": "y > 0"},
        "nu": {"type": "float", "default": 1.0, "constraint": "nu > 0"},
    },
    "logdisc": {},
}

_CONSTRUCTORS = {
    "power": make_power_iterate,
    "laguerre": make_laguerre,
    "bessel": make_bessel,
    "disc": make_disc,
    "logdisc": make_logdisc,
}


def make_family(name, params=None):
    """Build a catalog entry by CLI name; unknown names or keys raise ParameterError."""
    params = dict(params or {})
    if name not in FAMILY_SCHEMAS:
        raise ParameterError(f"unknown family {name!r}; choose from {sorted(FAMILY_SCHEMAS)}")
    schema = FAMILY_SCHEMAS[name]
    for key in params:
        if key not in schema:
            raise ParameterError(f"unknown parameter {key!r} for family {name!r}")
    kwargs = {}
    for key, info in schema.items():
        value = params.get(key, info["default"])
        try:
            kwargs[key] = int(value) if info["type"] == "int" else float(value)
        except (TypeError, ValueError) as exc:
            raise ParameterError(f"parameter {key!r} for family {name!r} is not a number: {value!r}") from exc
        if info["type"] == "int" and float(value) != kwargs[key]:
            raise ParameterError(f"parameter {key!r} for family {name!r} must be an integer, got {value!r}")
    return _CONSTRUCTORS[name](**kwargs)


def default_params(name):
    return {k: v["default"] for k, v in FAMILY_SCHEMAS[name].items()}
