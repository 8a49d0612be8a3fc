#!/usr/bin/env python3
"""Benchmark the jitted kernels against the pure-numpy fallback.

Runs each hot kernel on grid sizes typical of spectrogram tabulation and
oracle-mode verification, and prints per-path timings plus speedups.
The numpy path is always available; the numba path is skipped (with a
note) when numba is missing or GUL_NO_NUMBA is set.

Usage: python benchmarks/bench_kernels.py [--repeats 5]
"""

import argparse
import time

import numpy as np

from gul import _kernels as K


def make_inputs(n_points, n_atoms=6, n_coeffs=96, seed=0):
    rng = np.random.default_rng(seed)
    coeffs = (rng.standard_normal(n_atoms) + 1j * rng.standard_normal(n_atoms))
    powers = rng.integers(0, 6, n_atoms).astype(np.int64)
    expos = rng.uniform(-2, 2, n_atoms) + 1j * rng.uniform(-2, 2, n_atoms)
    z = rng.uniform(-3, 3, n_points) + 1j * rng.uniform(-3, 3, n_points)
    hc = rng.standard_normal(n_coeffs) + 1j * rng.standard_normal(n_coeffs)
    t = rng.uniform(-6, 6, n_points)
    return (coeffs.astype(np.complex128), powers, expos.astype(np.complex128),
            z.astype(np.complex128), hc.astype(np.complex128), t)


def best_of(fn, repeats):
    times = []
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--repeats", type=int, default=5)
    parser.add_argument("--points", type=int, default=250_000)
    args = parser.parse_args()

    coeffs, powers, expos, z, hc, t = make_inputs(args.points)

    cases = [
        ("atom_sum", K.atom_sum_np, K.atom_sum_nb, (coeffs, powers, expos, z)),
        ("atom_sum_weighted", K.atom_sum_weighted_np, K.atom_sum_weighted_nb,
         (coeffs, powers, expos, z)),
        ("hermite_series", K.hermite_series_np, K.hermite_series_nb, (hc, t)),
        ("hermite_bank", K.hermite_bank_np, K.hermite_bank_nb, (64, t)),
    ]

    print(f"points={args.points} repeats={args.repeats} "
          f"numba_available={K.HAS_NUMBA} active_path="
          f"{'numba' if K.USING_NUMBA else 'numpy'}")
    print(f"{'kernel':<20} {'numpy':>10} {'numba':>10} {'speedup':>8}")
    for name, np_fn, nb_fn, data in cases:
        t_np = best_of(lambda: np_fn(*data), args.repeats)
        if nb_fn is not None:
            nb_fn(*data)  # compile outside the timer
            t_nb = best_of(lambda: nb_fn(*data), args.repeats)
            ref = np.asarray(np_fn(*data))
            got = np.asarray(nb_fn(*data))
            assert np.allclose(ref, got, rtol=1e-12, atol=1e-12), name
            print(f"{name:<20} {t_np*1e3:>8.2f}ms {t_nb*1e3:>8.2f}ms {t_np/t_nb:>7.2f}x")
        else:
            print(f"{name:<20} {t_np*1e3:>8.2f}ms {'n/a':>10} {'n/a':>8}")


if __name__ == "__main__":
    main()
