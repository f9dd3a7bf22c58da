"""Hot inner loops, each in a numba flavour (``*_nb``) and a numpy flavour (``*_np``).

The undecorated names dispatch on :data:`gencs._accel.USE_NUMBA`.  Both
flavours compute the same quantities and must agree to rounding; the test
suite and ``benchmarks/bench_kernels.py`` exercise them side by side.
"""
import math

import numpy as np
from scipy.special import gammaln

from ._accel import USE_NUMBA, njit

_RESCALE = 1e200


# ---------------------------------------------------------------------------
# Laguerre L_m^alpha(x), m = 0..M-1, by the forward three-term recurrence
# ---------------------------------------------------------------------------

@njit
def laguerre_table_nb(M, alpha, xs):
    nx = xs.shape[0]
    out = np.empty((M, nx))
    for j in range(nx):
        x = xs[j]
        prev = 1.0
        out[0, j] = prev
        if M > 1:
            cur = 1.0 + alpha - x
            out[1, j] = cur
            for m in range(1, M - 1):
                nxt = ((2 * m + 1 + alpha - x) * cur - (m + alpha) * prev) / (m + 1)
                out[m + 1, j] = nxt
                prev = cur
                cur = nxt
    return out


def laguerre_table_np(M, alpha, xs):
    xs = np.asarray(xs, dtype=float)
    out = np.empty((M, xs.shape[0]))
    out[0] = 1.0
    if M > 1:
        out[1] = 1.0 + alpha - xs
        for m in range(1, M - 1):
            out[m + 1] = ((2 * m + 1 + alpha - xs) * out[m] - (m + alpha) * out[m - 1]) / (m + 1)
    return out


# ---------------------------------------------------------------------------
# Half-integer Bessel J_{m+1/2}(x), m = 0..M-1, x > 0
#   orders m <= floor(x): upward recurrence from the trigonometric closed forms
#   higher orders: Miller downward recurrence, scaled by least squares against
#   the upward values on the overlap 0..floor(x)
# ---------------------------------------------------------------------------

def miller_start(m_top, x):
    return m_top + max(20, int(math.ceil(2.0 * math.sqrt(m_top * x))))


@njit
def bessel_half_table_nb(M, xs):
    nx = xs.shape[0]
    out = np.zeros((M, nx))
    f = np.zeros(M)
    for j in range(nx):
        x = xs[j]
        pref = math.sqrt(2.0 / (math.pi * x))
        s = math.sin(x)
        c = math.cos(x)
        j0 = pref * s
        nup = int(math.floor(x))
        if nup > M - 1:
            nup = M - 1
        out[0, j] = j0
        if nup >= 1:
            j1 = pref * (s / x - c)
            out[1, j] = j1
            for n in range(1, nup):
                out[n + 1, j] = (2 * n + 1) / x * out[n, j] - out[n - 1, j]
        if nup < M - 1:
            m_top = M - 1
            start = m_top + max(20, int(math.ceil(2.0 * math.sqrt(m_top * x))))
            fp1 = 0.0
            fn = 1e-30
            for i in range(M):
                f[i] = 0.0
            for n in range(start, 0, -1):
                if n < M:
                    f[n] = fn
                fm1 = (2 * n + 1) / x * fn - fp1
                fp1 = fn
                fn = fm1
                if abs(fn) > _RESCALE:
                    fn /= _RESCALE
                    fp1 /= _RESCALE
                    for i in range(n, M):
                        f[i] /= _RESCALE
            f[0] = fn
            fmax = 0.0
            for n in range(M):
                if abs(f[n]) > fmax:
                    fmax = abs(f[n])
            for n in range(M):
                f[n] /= fmax
            num = 0.0
            den = 0.0
            for n in range(nup + 1):
                num += out[n, j] * f[n]
                den += f[n] * f[n]
            scale = num / den
            for n in range(nup + 1, M):
                out[n, j] = scale * f[n]
    return out


def bessel_half_table_np(M, xs):
    xs = np.asarray(xs, dtype=float)
    nx = xs.shape[0]
    out = np.zeros((M, nx))
    pref = np.sqrt(2.0 / (np.pi * xs))
    s, c = np.sin(xs), np.cos(xs)
    nup = np.minimum(np.floor(xs).astype(np.int64), M - 1)
    out[0] = pref * s
    top_up = int(nup.max()) if nx else 0
    if top_up >= 1:
        up = np.empty((top_up + 1, nx))
        up[0] = out[0]
        up[1] = pref * (s / xs - c)
        with np.errstate(over="ignore", invalid="ignore"):
            for n in range(1, top_up):
                up[n + 1] = (2 * n + 1) / xs * up[n] - up[n - 1]
        rows = np.arange(top_up + 1)[:, None]
        keep = rows <= nup[None, :]
        out[: top_up + 1] = np.where(keep, up, 0.0)
    need = nup < M - 1
    if np.any(need):
        xm = xs[need]
        m_top = M - 1
        start = max(miller_start(m_top, float(x)) for x in xm)
        f = np.zeros((M, xm.shape[0]))
        fp1 = np.zeros_like(xm)
        fn = np.full_like(xm, 1e-30)
        for n in range(start, 0, -1):
            if n < M:
                f[n] = fn
            fm1 = (2 * n + 1) / xm * fn - fp1
            fp1, fn = fn, fm1
            big = np.abs(fn) > _RESCALE
            if np.any(big):
                fn = np.where(big, fn / _RESCALE, fn)
                fp1 = np.where(big, fp1 / _RESCALE, fp1)
                f[n:] = np.where(big[None, :], f[n:] / _RESCALE, f[n:])
        f[0] = fn
        f /= np.max(np.abs(f), axis=0)[None, :]
        sub_up = out[:, need]
        sub_nup = nup[need]
        rows = np.arange(M)[:, None]
        overlap = rows <= sub_nup[None, :]
        num = np.sum(np.where(overlap, sub_up * f, 0.0), axis=0)
        den = np.sum(np.where(overlap, f * f, 0.0), axis=0)
        scaled = f * (num / den)[None, :]
        out[:, need] = np.where(overlap, sub_up, scaled)
    return out


# ---------------------------------------------------------------------------
# Abel-damped Laguerre normalization series
#   S(t) = sum_m L_m^alpha(x) t^(m+1) / (m+1)
# with the majorant |L_m^alpha(x)| <= C(m+alpha, m) e^(x/2)  (alpha >= 0, x >= 0)
# Returns (partial sum, majorant tail bound, terms used, converged flag).
# ---------------------------------------------------------------------------

@njit
def abel_laguerre_sum_nb(alpha, x, t, tol, min_terms, max_terms):
    half = math.exp(0.5 * x)
    prev = 1.0
    cur = 1.0 + alpha - x
    binom = 1.0  # C(m+alpha, m) at m = 0
    tpow = t
    total = prev * tpow
    small = 0
    m = 0
    while m + 1 < max_terms:
        m += 1
        binom *= (m + alpha) / m
        tpow *= t
        term = cur * tpow / (m + 1)
        total += term
        if abs(term) < tol * abs(total):
            small += 1
        else:
            small = 0
        if m >= min_terms and small >= 5:
            # majorant from index m+1 on; its ratio t(k+1+alpha)/(k+2) decreases in k
            b_next = binom * (m + 1 + alpha) / (m + 1) * tpow * t * half / (m + 2)
            q = t * (m + 2 + alpha) / (m + 3)
            if q < 1.0:
                tail = b_next / (1.0 - q)
                if tail < tol * abs(total):
                    return total, tail, m + 1, True
        nxt = ((2 * m + 1 + alpha - x) * cur - (m + alpha) * prev) / (m + 1)
        prev = cur
        cur = nxt
    return total, math.inf, m + 1, False


def abel_laguerre_sum_np(alpha, x, t, tol, min_terms, max_terms, block=4096):
    # the recurrence runs on python floats (numpy scalars are far slower); the stopping rule is vectorised per block
    half = math.exp(0.5 * x)
    lt = math.log(t)
    total = 0.0
    small = 0
    start = 0
    prev, cur = 0.0, 1.0
    while start < max_terms:
        stop = min(start + block, max_terms)
        ms = np.arange(start, stop)
        seq = []
        for m in range(start, stop):
            seq.append(cur)
            prev, cur = cur, ((2 * m + 1 + alpha - x) * cur - (m + alpha) * prev) / (m + 1)
        vals = np.array(seq)
        terms = vals * np.exp((ms + 1) * lt) / (ms + 1)
        partial = total + np.cumsum(terms)
        negligible = np.abs(terms) < tol * np.abs(partial)
        idx = np.arange(ms.size)
        last_big = np.maximum.accumulate(np.where(negligible, -1, idx))
        run = np.where(last_big < 0, idx + 1 + small, idx - last_big)
        cand = np.nonzero((ms >= max(min_terms, 1)) & (run >= 5))[0]
        if cand.size:
            mc = ms[cand].astype(float)
            log_binom = gammaln(mc + 2 + alpha) - math.lgamma(alpha + 1) - gammaln(mc + 2)
            b_next = np.exp(log_binom + (mc + 2) * lt) * half / (mc + 2)
            q = t * (mc + 2 + alpha) / (mc + 3)
            with np.errstate(divide="ignore"):
                tail = np.where(q < 1.0, b_next / (1.0 - q), np.inf)
            ok = np.nonzero(tail < tol * np.abs(partial[cand]))[0]
            if ok.size:
                i = cand[ok[0]]
                return float(partial[i]), float(tail[ok[0]]), int(ms[i] + 1), True
        total = float(partial[-1])
        small = int(run[-1])
        start = stop
    return total, math.inf, int(max_terms), False


if USE_NUMBA:
    laguerre_table = laguerre_table_nb
    bessel_half_table = bessel_half_table_nb
    abel_laguerre_sum = abel_laguerre_sum_nb
else:
    laguerre_table = laguerre_table_np
    bessel_half_table = bessel_half_table_np
    abel_laguerre_sum = abel_laguerre_sum_np
