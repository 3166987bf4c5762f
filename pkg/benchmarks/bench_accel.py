#!/usr/bin/env python3
"""Benchmark the compiled hot loops against the pure-numpy fallbacks.

Run with the default environment to get both timings; the same comparison is
what you give up by setting RIESZLAB_NO_NUMBA=1.
"""

import time

import numpy as np

from rieszlab import _fast
from rieszlab._accel import BACKEND, HAVE_NUMBA


def bench(fn, *args, repeat=5):
    fn(*args)  # warm-up (numba compiles here)
    best = np.inf
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    rng = np.random.default_rng(0)
    n = 2000
    pts1 = np.ascontiguousarray(np.sort(rng.uniform(-500, 500, n))[:, None])
    pts2 = np.ascontiguousarray(rng.uniform(-16, 16, (n, 2)))
    x = np.ascontiguousarray(pts1[:, 0])

    cases = [
        ("pair_sum log d=1", (_fast.pair_sum_numpy, pts1, _fast.FAMILY_LOG, 0.0)),
        ("pair_sum riesz d=2", (_fast.pair_sum_numpy, pts2, _fast.FAMILY_RIESZ, 0.5)),
        ("bin_pairs_signed", (_fast.bin_pairs_signed_numpy, x, 200.0, 256, 1000.0)),
        ("bin_pairs_radial", (_fast.bin_pairs_radial_numpy, pts2, 8.0, 64, 32.0)),
    ]
    numba_impls = {
        "pair_sum log d=1": getattr(_fast, "pair_sum_numba", None),
        "pair_sum riesz d=2": getattr(_fast, "pair_sum_numba", None),
        "bin_pairs_signed": getattr(_fast, "bin_pairs_signed_numba", None),
        "bin_pairs_radial": getattr(_fast, "bin_pairs_radial_numba", None),
    }

    print(f"active backend: {BACKEND} (n = {n} points)")
    print(f"{'kernel':24s} {'numpy':>12s} {'numba':>12s} {'speedup':>9s}")
    for name, (np_fn, *args) in cases:
        t_np = bench(np_fn, *args)
        if HAVE_NUMBA and numba_impls[name] is not None:
            nb_fn = numba_impls[name]
            t_nb = bench(nb_fn, *args)
            print(f"{name:24s} {t_np * 1e3:9.2f} ms {t_nb * 1e3:9.2f} ms {t_np / t_nb:8.1f}x")
        else:
            print(f"{name:24s} {t_np * 1e3:9.2f} ms {'-':>12s} {'-':>9s}")


if __name__ == "__main__":
    main()
