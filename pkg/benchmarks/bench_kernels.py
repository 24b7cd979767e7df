"""Benchmark the jitted kernels against the pure-numpy fallback.

Runs every kernel on a representative workload under both backends and
prints per-call timings plus the speedup.  The numba functions are
warmed up once before timing so compilation is not measured.

Usage: python benchmarks/bench_kernels.py [--repeat 5]
"""

import argparse
import time

import numpy as np

from digitcollide import _kernels

WORKLOADS = {
    "digit_sums_range": lambda fn: fn(0, 1_000_000, 81),
    "window_sums_range": lambda fn: fn(0, 1_000_000, 81, 3, 12, 27, 3**7),
    "diff_counts": lambda fn: fn(0, 1 << 21, 54321,
                                 np.zeros(129, dtype=np.int64)),
    "catalan_vals_range": lambda fn: fn(0, 500_000),
    "max_run_scan": lambda fn: fn(3**22, 1 << 20),
    "gowers_counts": lambda fn: fn(
        np.bitwise_count(np.arange(256, dtype=np.int64)).astype(np.int64),
        2, np.zeros(2 * 4 * 8 * 1 + 1, dtype=np.int64)),
}


def time_call(fn, work, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        work(fn)
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()

    backends = list(_kernels.IMPLS)
    if "numba" not in backends:
        print("numba unavailable; timing the numpy fallback only")
    print(f"active backend: {_kernels.BACKEND}")
    header =f"{'kernel':<22}" + "".join(f"{b + ' (s)':>14}" for b in backends)
    if len(backends) == 2:
        header += f"{'speedup':>10}"
    print(header)
    for name, work in WORKLOADS.items():
        times = {}
        for backend in backends:
            fn = _kernels.IMPLS[backend][name]
            if backend == "numba":
                work(fn)  # compile outside the timed region
            times[backend] = time_call(fn, work, args.repeat)
        row = f"{name:<22}" + "".join(f"{times[b]:>14.4f}" for b in backends)
        if len(backends) == 2:
            row += f"{times['numpy'] / times['numba']:>9.1f}x"
        print(row)


if __name__ == "__main__":
    main()
