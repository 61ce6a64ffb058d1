#!/usr/bin/env python3
"""Benchmark the numba row-reduction kernel against the pure-numpy fallback.

Run directly: python benchmarks/bench_linalg.py
Both backends must agree bit-for-bit; the script asserts that before timing.
"""

import time

import numpy as np

from posetlab import _kernels

PRIME = 101
SIZES = [(60, 40), (150, 100), (300, 200), (600, 400), (900, 600)]
REPEATS = 5


def run_backend(fn, a, p):
    work = a.copy()
    rank, piv = fn(work, p, work.shape[1])
    return work, rank, piv


def main():
    if not _kernels.NUMBA_AVAILABLE:
        print("numba is not importable; nothing to compare")
        return
    rng = np.random.default_rng(7)
    # Warm the JIT before timing.
    warm = rng.integers(0, PRIME, size=(20, 20), dtype=np.int64)
    run_backend(_kernels._rref_inplace_numba, warm, PRIME)

    print(f"{'shape':>12} {'numba (ms)':>12} {'numpy (ms)':>12} {'speedup':>9}")
    for m, n in SIZES:
        a = rng.integers(0, PRIME, size=(m, n), dtype=np.int64)

        out_nb, rank_nb, piv_nb = run_backend(_kernels._rref_inplace_numba, a, PRIME)
        out_np, rank_np, piv_np = run_backend(_kernels._rref_inplace_numpy, a, PRIME)
        assert rank_nb == rank_np
        assert np.array_equal(piv_nb, piv_np)
        assert np.array_equal(out_nb, out_np)

        times = {}
        for label, fn in (
            ("numba", _kernels._rref_inplace_numba),
            ("numpy", _kernels._rref_inplace_numpy),
        ):
            best = float("inf")
            for _ in range(REPEATS):
                work = a.copy()
                t0 = time.perf_counter()
                fn(work, PRIME, n)
                best = min(best, time.perf_counter() - t0)
            times[label] = best

        speedup = times["numpy"] / times["numba"]
        print(
            f"{f'{m}x{n}':>12} {times['numba'] * 1e3:>12.3f} "
            f"{times['numpy'] * 1e3:>12.3f} {speedup:>8.1f}x"
        )


if __name__ == "__main__":
    main()
