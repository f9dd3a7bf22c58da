"""Property harness: each structural claim about a family becomes a recorded numerical check."""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import mpmath
import numpy as np

from . import algebra
from ._accel import backend_name
from .core import (
    check_label,
    kernel,
    normalization,
    state_vector,
)
from .errors import GencsError, NoConvergence, NormalizationVanishes, RatioUndefined
from .families import disc_normalization_closed_form, make_disc, make_family
from .quadrature import aliasing_free_nodes, moment_matrix, radial_integral
from .reporting import RunConfig
from .specfun import i_half, laguerre_alpha, upper_gamma

# label ranges used for random sampling and default grids
R_RANGES = {
    "power": (0.2, 3.0),
    "laguerre": (0.1, 10.0),
    "bessel": (0.1, 8.0),
    "logdisc": (0.05, 1.0),
    "canonical": (0.1, 3.0),
}
NOGO_LABELS = {
    "power": (1.5, math.pi / 5),
    "laguerre": (1.0, math.pi / 5),
    "bessel": (1.3, math.pi / 5),
    "logdisc": (0.6, math.pi / 5),
}
NOGO_THRESHOLD = {"power": 10.0, "laguerre": 1e-8, "bessel": 1e-8, "canonical": 1e-8}
POSITIVITY_LABELS = {"laguerre": 5.0, "bessel": 4.0}


def _clean(v):
    if isinstance(v, dict):
        return {str(k): _clean(x) for k, x in v.items()}
    if isinstance(v, (list, tuple, np.ndarray)):
        return [_clean(x) for x in v]
    if isinstance(v, (bool, np.bool_)):
        return bool(v)
    if isinstance(v, (int, np.integer)):
        return int(v)
    if isinstance(v, (complex, np.complexfloating)):
        return [float(v.real), float(v.imag)]
    if isinstance(v, (float, np.floating, mpmath.mpf)):
        return float(v)
    return v


@dataclass
class CheckRecord:
    """One check; ``passed`` is always ``residual <= tolerance``."""

    name: str
    inputs: dict
    residual: float
    tolerance: float
    informational: bool = False
    diagnostics: dict = field(default_factory=dict)

    def __post_init__(self):
        self.inputs = _clean(self.inputs)
        self.diagnostics = _clean(self.diagnostics)
        self.residual = float(self.residual)
        self.tolerance = float(self.tolerance)

    @property
    def passed(self):
        return bool(self.residual <= self.tolerance)

    def to_dict(self):
        return {
            "name": self.name,
            "inputs": self.inputs,
            "residual": self.residual,
            "tolerance": self.tolerance,
            "passed": self.passed,
            "informational": self.informational,
            "diagnostics": self.diagnostics,
        }

    @classmethod
    def from_dict(cls, d):
        rec = cls(d["name"], d["inputs"], d["residual"], d["tolerance"], d["informational"], d["diagnostics"])
        if rec.passed != d["passed"]:
            raise ValueError(f"check {d['name']}: passed flag disagrees with residual and tolerance")
        return rec


@dataclass
class VerificationReport:
    family: str
    params: dict
    config: dict
    checks: list

    @property
    def failures(self):
        return [c.name for c in self.checks if not c.informational and not c.passed]

    @property
    def all_passed(self):
        return not self.failures

    def summary(self):
        return {
            "total": len(self.checks),
            "passed": sum(c.passed for c in self.checks),
            "failed": self.failures,
            "informational": [c.name for c in self.checks if c.informational],
            "all_passed": self.all_passed,
            "verdicts": {c.name: ("informational" if c.informational else "holds" if c.passed else "fails") for c in self.checks},
        }

    def get(self, name):
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def to_dict(self):
        return {
            "family": self.family,
            "params": _clean(self.params),
            "config": _clean(self.config),
            "checks": [c.to_dict() for c in self.checks],
            "summary": self.summary(),
        }

    @classmethod
    def from_dict(cls, d):
        return cls(d["family"], d["params"], d["config"], [CheckRecord.from_dict(c) for c in d["checks"]])


def primary_mode(entry):
    """Pairing used for pass/fail: signed where the radicands can be negative."""
    return "modulus" if entry.spec.modes_coincide else "signed"


def default_r_grid(entry, n=12):
    spec = entry.spec
    if spec.name == "disc":
        y = spec.param_dict["y"]
        return list(y * np.linspace(0.1, 1.0, 10))
    if spec.name == "logdisc":
        return [0.1 * i for i in range(1, 10)] + [1.0]
    lo, hi = R_RANGES[spec.name]
    return list(np.linspace(lo, hi, n))


def sample_labels(entry, n, rng):
    spec = entry.spec
    if spec.name == "disc":
        y = spec.param_dict["y"]
        lo, hi = 0.05 * y, y
    else:
        lo, hi = R_RANGES[spec.name]
    rs = rng.uniform(lo, hi, size=n)
    ts = rng.uniform(0.0, 2.0 * math.pi, size=n)
    return [(float(r), float(t)) for r, t in zip(rs, ts)]


# ---------------------------------------------------------------------------
# normalization
# ---------------------------------------------------------------------------

def closed_form_normalization(entry, r):
    """Independent value of the signed N(r) for each family."""
    spec = entry.spec
    p = spec.param_dict
    if spec.name == "laguerre":
        a = p["alpha"]
        return math.exp(r - a * math.log(r)) * upper_gamma(a, r)
    if spec.name == "bessel":
        return i_half(r)
    if spec.name == "disc":
        return disc_normalization_closed_form(p["y"], p["nu"], r)
    if spec.name == "logdisc":
        return math.cosh(math.log(r))
    if spec.name == "canonical":
        return math.exp(r * r)
    if spec.name == "power":
        # high-precision direct sum; terms beyond k^m > 4 r^2 + 60 are below 1e-30 relative
        k = p["k"]
        with mpmath.workdps(40):
            total = mpmath.mpf(0)
            m = 0
            while True:
                K = mpmath.mpf(k) ** m
                total += mpmath.exp(2 * K * mpmath.log(r) - mpmath.loggamma(K + 1))
                if K > 4 * r * r + 60:
                    break
                m += 1
            return float(total)
    raise ValueError(spec.name)


def check_normalization(entry, r_grid, M, tol, mode="modulus"):
    """max |<z|z> - 1| from truncated states; signed/modulus comparison in diagnostics."""
    spec = entry.spec
    worst = 0.0
    tail_rel = 0.0
    skipped, diverged, rows = [], [], []
    for r in r_grid:
        try:
            st = state_vector(spec, r, 0.0, M, mode=mode)
            rows.append(_mode_pair(spec, r))
        except NormalizationVanishes as exc:
            skipped.append({"r": r, "reason": str(exc)})
            continue
        except NoConvergence as exc:
            diverged.append({"r": r, "reason": str(exc)})
            rows.append(_mode_pair(spec, r))
            worst = math.inf
            continue
        c = st.coeffs
        head = np.sum(np.abs(c) ** 2) if mode == "modulus" else np.sum((st.radial**2).real)
        worst = max(worst, abs(head / st.norm_factor - 1.0))
        tail_rel = max(tail_rel, st.tail_bound / st.norm_factor)
    informational = not spec.modes_coincide
    return CheckRecord(
        "normalization",
        {"r_grid": list(r_grid), "M": M, "mode": mode},
        worst,
        tol + tail_rel,
        informational,
        {"skipped": skipped, "diverged": diverged, "modes": rows, "max_tail_over_N": tail_rel},
    )


def _mode_pair(spec, r):
    try:
        ns = normalization(spec, r, mode="signed")
    except GencsError:
        ns = math.nan
    try:
        nm = normalization(spec, r, mode="modulus")
    except NoConvergence:
        nm = math.inf
    except GencsError:
        nm = math.nan
    disc = abs(nm - ns) / abs(ns) if math.isfinite(ns) and ns != 0 else math.nan
    return {"r": r, "signed": ns, "modulus": nm, "relative_discrepancy": disc}


def check_normalization_closed_form(entry, r_grid, tol):
    """Signed series N(r) against its closed form (or a high-precision sum for the power family)."""
    spec = entry.spec
    worst = 0.0
    rows = []
    for r in r_grid:
        try:
            check_label(spec, r)
            n = normalization(spec, r, mode="signed")
        except NormalizationVanishes:
            continue
        ref = closed_form_normalization(entry, r)
        err = abs(n / ref - 1.0)
        worst = max(worst, err)
        rows.append({"r": r, "series": n, "closed_form": ref, "relative_error": err})
    return CheckRecord("normalization_closed_form", {"r_grid": list(r_grid), "mode": "signed"}, worst, tol, False, {"points": rows})


def series_ratio_check(entry, m=40, r_grid=None, tol=1e-12):
    """Disc family: the ratio of consecutive N-series terms at index m against its exact form, with limit q^2 < 1."""
    spec = entry.spec
    y, nu = spec.param_dict["y"], spec.param_dict["nu"]
    r_grid = r_grid or [0.1 * y, 0.5 * y, 0.9 * y]
    worst = 0.0
    rows = []
    for r in r_grid:
        c = spec.coeff_table(m + 2, np.array([r]))[:, 0]
        ratio = float(abs(c[m + 1]) ** 2 / abs(c[m]) ** 2)
        q2 = ((y - r) / y) ** 2
        exact = q2 * (2 * m + nu + 1) * (2 * m + nu + 2) / ((2 * m + 1) * (2 * m + 2))
        worst = max(worst, abs(ratio / exact - 1.0))
        rows.append({"r": r, "ratio": ratio, "exact": exact, "limit_q2": q2, "below_one": ratio < 1.0})
    return CheckRecord("series_ratio", {"m": m, "r_grid": r_grid}, worst, tol, False, {"points": rows})


# ---------------------------------------------------------------------------
# resolution of identity
# ---------------------------------------------------------------------------

def check_resolution(entry, dim, tol, quad_tol=1e-10, mode=None, name="resolution", informational=False):
    mode = mode or primary_mode(entry)
    D = moment_matrix(entry, dim, tol=quad_tol, mode=mode)
    diag = np.diag(D.entries)
    targets = np.array([entry.moment_target(m) for m in range(dim)])
    diag_dev = np.abs(diag - 1.0)
    diagnostics = {
        "diagonal": diag,
        "oracle_over_rho": targets,
        "quadrature_error_estimate": D.diag_error,
        "offdiagonal_spot_checks": {f"{m},{l}": v for (m, l), v in D.spot_checks.items()},
    }
    return CheckRecord(name, {"dim": dim, "mode": mode, "quad_tol": quad_tol}, float(np.max(diag_dev)), tol, informational, diagnostics), D


def offdiagonal_record(D, tol):
    vals = [abs(v) for v in D.spot_checks.values()]
    return CheckRecord(
        "resolution_offdiagonal",
        {"pairs": [list(k) for k in D.spot_checks], "mode": D.mode},
        max(vals) if vals else 0.0,
        tol,
        False,
        {"values": {f"{m},{l}": v for (m, l), v in D.spot_checks.items()}},
    )


def disc_measure_factor(entry, dim, tol, quad_tol=1e-10):
    """With the bare density r^(nu-1) every diagonal equals 1/nu; with nu r^(nu-1) it equals 1."""
    p = entry.spec.param_dict
    bare = make_disc(p["y"], p["nu"], measure="bare")
    D = moment_matrix(bare, dim, tol=quad_tol, spot_pairs=())
    diag = np.diag(D.entries)
    expected = 1.0 / p["nu"]
    return CheckRecord(
        "disc_measure_factor",
        {"dim": dim, "y": p["y"], "nu": p["nu"], "measure": "bare"},
        float(np.max(np.abs(diag - expected))),
        tol,
        False,
        {"bare_diagonal": diag, "expected": expected},
    )


def logdisc_inverse_square_demo(cutoffs=(1e-2, 1e-4, 1e-6), m=1):
    """int_eps^1 (log r)^(2m) r^-2 dr / (2m)! grows like 1/eps: that density has no finite moments."""
    from .families import make_logdisc

    entry = make_logdisc(measure="corrected")
    spec = entry.spec
    from .quadrature import integrate

    vals = []
    for eps in cutoffs:
        res = integrate(
            lambda r: (spec.coeff_table(m + 1, r)[m].real ** 2) / r**2,
            eps,
            1.0,
            tol=1e-10,
        )
        vals.append(res.value)
    growth = vals[-1] / vals[0]
    return CheckRecord(
        "logdisc_inverse_square_measure",
        {"m": m, "cutoffs": list(cutoffs)},
        growth,
        2.0,
        True,
        {"truncated_moments": vals, "note": "moments diverge as the cutoff goes to zero; w(r) = 1 is used instead"},
    )


# ---------------------------------------------------------------------------
# kernel
# ---------------------------------------------------------------------------

def check_kernel(entry, pairs, sq_pairs, M, tols, quad_tol=1e-10, mode=None):
    """Hermiticity, K(z,z) = 1 within the tail bound, and square integrability."""
    spec = entry.spec
    mode = mode or primary_mode(entry)
    herm = 0.0
    for z1, z2 in pairs:
        k12 = kernel(spec, z1, z2, M=M, mode="modulus")
        k21 = kernel(spec, z2, z1, M=M, mode="modulus")
        herm = max(herm, abs(k12.value - k21.value.conjugate()))
    records = [
        CheckRecord("kernel_hermiticity", {"pairs": len(pairs), "M": M, "mode": "modulus"}, herm, tols["kernel_hermiticity"])
    ]
    diag_dev, max_tail, min_k = 0.0, 0.0, math.inf
    labels = [z for pair in pairs for z in pair]
    for z in labels:
        kv = kernel(spec, z, z, M=M, mode=mode)
        diag_dev = max(diag_dev, abs(kv.value - 1.0))
        max_tail = max(max_tail, kv.tail_bound)
        min_k = min(min_k, kv.value.real)
    records.append(
        CheckRecord(
            "kernel_diagonal",
            {"labels": len(labels), "M": M, "mode": mode},
            diag_dev,
            tols["kernel_diagonal"] + max_tail,
            not math.isfinite(max_tail),
            {"max_tail_bound": max_tail, "min_K_zz": min_k, "positive": min_k > 0},
        )
    )
    sq = 0.0
    rows = []
    sq_tail = 0.0
    for z1, z2 in sq_pairs:
        val, ref, tail = square_integrability(entry, z1, z2, M, mode, quad_tol)
        sq = max(sq, abs(val - ref))
        sq_tail = max(sq_tail, tail)
        rows.append({"z": list(z1), "z_prime": list(z2), "integral": val, "kernel": ref})
    records.append(
        CheckRecord(
            "kernel_square_integrability",
            {"pairs": len(sq_pairs), "M": M, "mode": mode},
            sq,
            tols["kernel_square_integrability"] + 2.0 * sq_tail,
            not math.isfinite(sq_tail),
            {"points": rows, "max_tail_bound": sq_tail},
        )
    )
    return records


def _phase_matrix(phases, P):
    j = np.arange(P)
    return np.exp(2j * math.pi * np.array([[(int(n) * jj) % P for jj in j] for n in phases]) / P)


def square_integrability(entry, z1, z2, M, mode, quad_tol=1e-10):
    """int K(z, z'') K(z'', z') dmu(z'') by radial adaptive + angular trapezoid quadrature.

    Both kernels are truncated at the M chosen by :func:`kernel` for the pair;
    the N(z'') factors of the two kernels cancel against the one in dmu.
    """
    spec = entry.spec
    ref = kernel(spec, z1, z2, M=M, mode=mode)
    Mk = ref.M
    (r1, t1), (r2, t2) = z1, z2
    n1 = _kernel_norm(spec, r1, mode, Mk)
    n2 = _kernel_norm(spec, r2, mode, Mk)
    c1 = spec.coeff_table(Mk, np.array([r1]))[:, 0]
    c2 = spec.coeff_table(Mk, np.array([r2]))[:, 0]
    phases = spec.phases(Mk)
    e1 = np.array([np.exp(1j * _angle(n, t1)) for n in phases])
    e2 = np.array([np.exp(1j * _angle(n, t2)) for n in phases])
    if mode == "modulus":
        A = np.conj(c1 * e1) / math.sqrt(n1)
    else:
        A = c1 * np.conj(e1) / math.sqrt(n1)
    B = c2 * e2 / math.sqrt(n2)
    active = np.nonzero((np.abs(A) > 0) | (np.abs(B) > 0))[0]
    A, B = A[active], B[active]
    act_phases = [phases[i] for i in active]
    P = aliasing_free_nodes(act_phases)
    E = _phase_matrix(act_phases, P)

    def integrand(C, us):
        C = C[active]
        X = np.conj(C) if mode == "modulus" else C
        F1 = np.einsum("m,mu,mp->up", A, C, E)
        F2 = np.einsum("m,mu,mp->up", B, X, np.conj(E))
        v = np.mean(F1 * F2, axis=1)
        return np.stack([v.real, v.imag], axis=1)

    scale = abs(ref.value) + 1e-3
    res = radial_integral(spec, integrand, list(active), tol=quad_tol, abs_tol=1e-12 * scale, M=Mk)
    return complex(res.value[0], res.value[1]), ref.value, ref.tail_bound


def _angle(n, theta):
    return 0.0 if abs(n) > 2**53 else math.fmod(n * theta, 2 * math.pi)


def _kernel_norm(spec, r, mode, M):
    try:
        return normalization(spec, r, mode=mode)
    except NoConvergence:
        c = spec.coeff_table(M, np.array([r]))[:, 0]
        return float(np.sum(np.abs(c) ** 2))


def kernel_closed_form(entry, pairs, tol, M):
    """Families with a closed-form kernel: logdisc cosh(sqrt(conj(z) z')), canonical exp(conj(z) z')."""
    spec = entry.spec
    worst = 0.0
    for (r1, t1), (r2, t2) in pairs:
        z1 = algebra.label_to_z(spec, r1, t1)
        z2 = algebra.label_to_z(spec, r2, t2)
        w = z1.conjugate() * z2
        if spec.name == "logdisc":
            ref = np.cosh(np.sqrt(complex(w))) / math.sqrt(math.cosh(math.log(r1)) * math.cosh(math.log(r2)))
        else:
            ref = np.exp(w) / math.sqrt(math.exp(r1 * r1 + r2 * r2))
        k = kernel(spec, (r1, t1), (r2, t2), M=M)
        worst = max(worst, abs(k.value - ref))
    return CheckRecord("kernel_closed_form", {"pairs": len(pairs), "M": M}, worst, tol)


# ---------------------------------------------------------------------------
# isometry
# ---------------------------------------------------------------------------

def isometry_integral(entry, phi, mode=None, quad_tol=1e-10):
    """int |Psi(z)|^2 dmu with Psi(z) = <Phi(z)|phi>; N(r) cancels against dmu.

    In signed mode |Psi|^2 is Psi_s conj(Psi), where Psi_s leaves the radial
    factors unconjugated.
    """
    spec = entry.spec
    mode = mode or primary_mode(entry)
    phi = np.asarray(phi, dtype=complex)
    M = phi.shape[0]
    phases = spec.phases(M)
    P = aliasing_free_nodes(phases)
    E = _phase_matrix(phases, P)

    def integrand(C, us):
        X = np.conj(C) if mode == "modulus" else C
        F = np.einsum("m,mu,mp->up", phi, X, np.conj(E))
        G = np.einsum("m,mu,mp->up", np.conj(phi), C, E)
        return np.mean(F * G, axis=1).real

    return radial_integral(spec, integrand, list(range(M)), tol=quad_tol, M=M)


def random_unit_vectors(n, length, seed):
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(n):
        v = rng.normal(size=length) + 1j * rng.normal(size=length)
        out.append(v / np.linalg.norm(v))
    return out


def check_isometry(entry, phis, tol, quad_tol=1e-10, mode=None, name="isometry", informational=False):
    mode = mode or primary_mode(entry)
    vals = [isometry_integral(entry, phi, mode=mode, quad_tol=quad_tol).value for phi in phis]
    dev = [abs(v - 1.0) for v in vals]
    return CheckRecord(
        name,
        {"vectors": len(phis), "length": len(phis[0]), "mode": mode},
        max(dev),
        tol,
        informational,
        {"integrals": vals},
    )


# ---------------------------------------------------------------------------
# positivity and the Rodrigues form
# ---------------------------------------------------------------------------

def positivity_diagnostics(entry, r, m_max=40, tol=1e-15):
    """Negative radicands s_m(r) for m <= m_max and the negative mass they carry.

    residual = sum_{s_m < 0} |s_m| / rho(m) divided by the truncated modulus sum.
    """
    spec = entry.spec
    if spec.radicand is None:
        raise ValueError(f"{spec.name}: no radicand to inspect")
    r = check_label(spec, r)
    s = spec.radicand(m_max + 1, np.array([r]))[:, 0]
    rho = np.exp([spec.log_rho(m) for m in range(m_max + 1)])
    neg = [int(m) for m in np.nonzero(s < 0)[0]]
    neg_mass = float(np.sum(np.abs(s[neg]) / rho[neg])) if neg else 0.0
    mod = float(np.sum(np.abs(s) / rho))
    pair = _mode_pair(spec, r)
    return CheckRecord(
        "positivity",
        {"r": r, "m_max": m_max},
        neg_mass / mod,
        tol,
        True,
        {
            "negative_indices": neg,
            "first_violation": neg[0] if neg else None,
            "negative_mass": neg_mass,
            "truncated_modulus_sum": mod,
            "truncated_signed_sum": float(np.sum(s / rho)),
            "N_signed": pair["signed"],
            "N_modulus": pair["modulus"],
            "signed_modulus_discrepancy": pair["relative_discrepancy"],
        },
    )


def leibniz_derivative(alpha, r, m):
    """m-th derivative of e^-r r^(m+alpha) by the product rule; returns (value, sum of |terms|)."""
    total = 0.0
    scale = 0.0
    for j in range(m + 1):
        # d^j e^-r = (-1)^j e^-r ; d^(m-j) r^(m+alpha) = Gamma(m+alpha+1)/Gamma(alpha+j+1) r^(alpha+j)
        t = math.comb(m, j) * (-1) ** j * math.exp(
            -r + math.lgamma(m + alpha + 1) - math.lgamma(alpha + j + 1) + (alpha + j) * math.log(r)
        )
        total += t
        scale += abs(t)
    return total, scale


def cauchy_derivative(alpha, r, m, nodes=64):
    """m-th derivative of e^-r r^(m+alpha) by the trapezoid rule on a circle around r."""
    rad = min(max(0.5, r / 2.0), 0.9 * r)
    k = np.arange(nodes)
    w = np.exp(2j * math.pi * k / nodes)
    zeta = r + rad * w
    F = np.exp(-zeta) * zeta ** (m + alpha)
    return float((math.factorial(m) * np.mean(F / (rad * w) ** m)).real)


def rodrigues_equivalence(alpha, r, m, tol=1e-7, method_tol=1e-9):
    """m! e^-r r^alpha L_m^alpha(r) against the m-th derivative of e^-r r^(m+alpha).

    Also checks the prefactor regrouping
    Gamma(alpha, r)^(-1/2) e^(-r/2) r^(alpha/2) = [e^r r^-alpha Gamma(alpha, r)]^(-1/2)
    and the resulting coefficient agreement.
    """
    lag = math.factorial(m) * math.exp(-r) * r**alpha * laguerre_alpha(m, alpha, r)
    leib, scale = leibniz_derivative(alpha, r, m)
    cauchy = cauchy_derivative(alpha, r, m)
    res_deriv = abs(lag - leib) / scale
    method_gap = abs(leib - cauchy) / scale
    G = upper_gamma(alpha, r)
    left = G**-0.5 * math.exp(-r / 2.0) * r ** (alpha / 2.0)
    right = (math.exp(r) * r**-alpha * G) ** -0.5
    res_pref = abs(left - right) / abs(right)
    residual = max(res_deriv, res_pref)
    diagnostics = {
        "laguerre_form": lag,
        "product_rule": leib,
        "contour": cauchy,
        "derivative_methods_gap": method_gap,
        "prefactor_residual": res_pref,
    }
    if method_gap > method_tol:
        diagnostics["instability"] = "product-rule and contour derivatives disagree"
        residual = max(residual, method_gap)
    return CheckRecord("rodrigues", {"alpha": alpha, "r": r, "m": m}, residual, tol, False, diagnostics)


def rodrigues_sweep(alpha, rs=(0.5, 1.0, 2.0), m_max=5, tol=1e-7):
    recs = [rodrigues_equivalence(alpha, r, m, tol) for r in rs for m in range(m_max + 1)]
    worst = max(recs, key=lambda c: c.residual)
    return CheckRecord(
        "rodrigues",
        {"alpha": alpha, "r": list(rs), "m_max": m_max},
        worst.residual,
        tol,
        False,
        {"worst": worst.inputs, "cases": len(recs)},
    )


# ---------------------------------------------------------------------------
# algebra
# ---------------------------------------------------------------------------

def commutator_record(entry, dim, tol):
    res = algebra.commutator_check(algebra.ladder_matrices(entry, dim))
    return CheckRecord("commutators", {"dim": dim}, res.residual, tol, False, {"relations": res.details, "boundary": res.boundary})


def su11_record(dim, tol):
    res = algebra.su11_check(dim)
    return CheckRecord("su11", {"dim": dim}, res.residual, tol, False, {"relations": res.details, "boundary": res.boundary})


def eigenstate_record(entry, r, theta, M, tol, su11=False):
    res = algebra.eigenstate_residual(entry, r, theta, M, su11=su11)
    name = "eigenstate_su11" if su11 else "eigenstate"
    return CheckRecord(
        name,
        {"r": r, "theta": theta, "M": M, "operator": res.operator},
        res.residual,
        tol,
        False,
        {"eigenvalue": res.eigenvalue, "truncation_bound": res.bound,
         "within_bound": res.residual <= res.bound + 1e-14 * (1.0 + abs(res.eigenvalue))},
    )


def nogo_record(entry, r, theta, m_max=6):
    spec = entry.spec
    try:
        res = algebra.annihilator_nogo_scan(entry, r, theta, m_max)
    except RatioUndefined as exc:
        return CheckRecord("nogo_annihilator", {"r": r, "theta": theta, "m_max": m_max}, math.inf, 1.0, True, {"error": str(exc)})
    scale = float(np.max(np.abs(res.ratios)))
    diag = {"ratios": res.ratios, "dispersion": res.dispersion, "raw_ratios": res.raw, "raw_dispersion": res.raw_dispersion}
    inputs = {"r": r, "theta": theta, "m_max": m_max}
    if spec.name in ("disc", "logdisc", "canonical"):
        diag["claim"] = "annihilation operator exists: ratios constant"
        return CheckRecord("nogo_annihilator", inputs, res.dispersion, 1e-14 * max(1.0, scale), False, diag)
    threshold = NOGO_THRESHOLD[spec.name]
    diag["claim"] = f"no annihilation operator: dispersion exceeds {threshold:g}"
    residual = 1.0 / res.dispersion if res.dispersion > 0 else math.inf
    return CheckRecord("nogo_annihilator", inputs, residual, 1.0 / threshold, False, diag)


# ---------------------------------------------------------------------------
# suite
# ---------------------------------------------------------------------------

def run_suite(config: RunConfig):
    """Run every check that applies to ``config.family`` and assemble the report."""
    entry = make_family(config.family, config.params)
    spec = entry.spec
    tols = {k: config.tol(k) for k in (
        "kernel_hermiticity", "kernel_diagonal", "kernel_square_integrability")}
    rng = np.random.default_rng(config.seed)
    grids = config.grids
    r_grid = grids.get("r", default_r_grid(entry))
    n_pairs = int(grids.get("pairs", 50))
    n_sq = int(grids.get("sq_pairs", 5))
    n_vec = int(grids.get("isometry_vectors", 5))
    mode = primary_mode(entry)
    checks = []

    checks.append(check_normalization(entry, r_grid, config.M, config.tol("normalization")))
    checks.append(check_normalization_closed_form(entry, r_grid, config.tol("normalization_closed_form")))
    if spec.name == "disc":
        checks.append(series_ratio_check(entry, tol=config.tol("series_ratio")))

    rec, D = check_resolution(entry, config.dim, config.tol("resolution"), config.quad_tol)
    checks.append(rec)
    checks.append(offdiagonal_record(D, config.tol("resolution_offdiagonal")))
    if not spec.modes_coincide:
        checks.append(check_resolution(entry, config.dim, config.tol("resolution"), config.quad_tol,
                                       mode="modulus", name="resolution_modulus", informational=True)[0])
    if spec.name == "disc":
        checks.append(disc_measure_factor(entry, config.dim, config.tol("disc_measure_factor"), config.quad_tol))
    if spec.name == "logdisc":
        checks.append(logdisc_inverse_square_demo())

    labels = sample_labels(entry, 2 * n_pairs, rng)
    pairs = list(zip(labels[0::2], labels[1::2]))
    checks.extend(check_kernel(entry, pairs, pairs[:n_sq], config.M, tols, config.quad_tol, mode))
    if spec.name in ("logdisc", "canonical"):
        checks.append(kernel_closed_form(entry, pairs, config.tol("kernel_closed_form"), config.M))

    phis = random_unit_vectors(n_vec, config.dim, config.seed)
    checks.append(check_isometry(entry, phis, config.tol("isometry"), config.quad_tol, mode))
    if not spec.modes_coincide:
        checks.append(check_isometry(entry, phis, config.tol("isometry"), config.quad_tol, "modulus",
                                     name="isometry_modulus", informational=True))

    checks.append(commutator_record(entry, config.algebra_dim, config.tol("commutators")))
    if spec.name == "logdisc":
        checks.append(su11_record(config.algebra_dim, config.tol("su11")))
        checks.append(eigenstate_record(entry, math.exp(-0.5), 0.0, config.M, config.tol("eigenstate")))
        checks.append(eigenstate_record(entry, math.exp(-0.5), 0.0, config.M, config.tol("eigenstate"), su11=True))
    if spec.name == "disc":
        y = spec.param_dict["y"]
        checks.append(eigenstate_record(entry, 0.7 * y, math.pi / 3, config.M, config.tol("eigenstate")))
    if spec.name == "disc":
        nogo_r, nogo_t = 0.3 * spec.param_dict["y"], math.pi / 5
    else:
        nogo_r, nogo_t = NOGO_LABELS.get(spec.name, (0.5, math.pi / 5))
    checks.append(nogo_record(entry, nogo_r, nogo_t))

    if spec.radicand is not None:
        checks.append(positivity_diagnostics(entry, POSITIVITY_LABELS[spec.name], tol=config.tol("positivity")))
    if spec.name == "laguerre":
        checks.append(rodrigues_sweep(spec.param_dict["alpha"], tol=config.tol("rodrigues")))

    cfg = config.to_dict()
    cfg["backend"] = backend_name()
    return VerificationReport(spec.name, spec.param_dict, cfg, checks)
