"""Compare the numba kernels with their numpy twins.

Run with ``python benchmarks/bench_kernels.py``; prints best-of-n wall
times and the maximum disagreement between the two backends.
"""
import argparse
import time

import numpy as np

from gencs import _kernels


def best_time(fn, repeat):
    fn()  # warm-up (JIT compilation for the numba variant)
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def _first(out):
    # the Abel sum returns (sum, tail, terms, converged); compare the sum
    return np.asarray(out[0] if isinstance(out, tuple) else out)


def cases():
    xs = np.linspace(0.1, 40.0, 400)
    yield ("laguerre_table M=256 n=400",
           lambda: _kernels.laguerre_table_nb(256, 2.0, xs),
           lambda: _kernels.laguerre_table_np(256, 2.0, xs))
    yield ("bessel_half_table M=128 n=400",
           lambda: _kernels.bessel_half_table_nb(128, xs),
           lambda: _kernels.bessel_half_table_np(128, xs))
    yield ("abel_laguerre_sum r=5 t=0.99",
           lambda: _kernels.abel_laguerre_sum_nb(2.0, 5.0, 0.99, 1e-15, 10, 100000),
           lambda: _kernels.abel_laguerre_sum_np(2.0, 5.0, 0.99, 1e-15, 10, 100000))


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--repeat", type=int, default=20)
    args = ap.parse_args()
    print(f"{'kernel':34s} {'numba [ms]':>11s} {'numpy [ms]':>11s} {'speedup':>8s} {'max |diff|':>11s}")
    for name, nb, npy in cases():
        t_nb = best_time(nb, args.repeat)
        t_np = best_time(npy, args.repeat)
        a, b = _first(nb()), _first(npy())
        diff = float(np.max(np.abs(a - b)))
        print(f"{name:34s} {1e3 * t_nb:11.3f} {1e3 * t_np:11.3f} {t_np / t_nb:8.1f} {diff:11.2e}")


if __name__ == "__main__":
    main()
