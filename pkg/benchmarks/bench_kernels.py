#!/usr/bin/env python3
"""Benchmark the compiled kernels against the pure-Python fallback.

Runs the inner loops that dominate the package's runtime on representative
workloads and prints a timing table.  Invoke from the repository root:

    python benchmarks/bench_kernels.py [--nmax 10000] [--repeat 3]
"""

from __future__ import annotations

import argparse
import math
import time

import numpy as np

from qdensity import _pykernels

try:
    from qdensity import _ckernels
except ImportError:
    _ckernels = None


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        start = time.perf_counter()
        fn()
        times.append(time.perf_counter() - start)
    return min(times)


def workloads(n_max, n_points):
    support_ap = [k for k in range(1, n_max + 1) if k % 3 == 2]
    ones_ap = [1] * len(support_ap)
    support_all = list(range(1, n_max + 1))
    ones_all = [1] * n_max

    indicator_ap = [0] * (n_max + 1)
    indicator_ap[0] = 1
    for k in support_ap:
        indicator_ap[k] = 1
    recip_ap = _pykernels.reciprocal_coeffs(support_ap, ones_ap, 1, n_max)

    count_n = max(n_max // 4, 64)
    support_small = list(range(1, count_n + 1))
    ones_small = [-1] * count_n

    coeffs = np.array(indicator_ap[: min(n_max, 2000) + 1], dtype=float)
    zs = 0.9 * np.exp(1j * np.linspace(0.0, 2.0 * math.pi, n_points, endpoint=False))

    return [
        (
            f"reciprocal, residue-class support, n={n_max} (wide integers)",
            lambda mod: mod.reciprocal_coeffs(support_ap, ones_ap, 1, n_max),
        ),
        (
            f"reciprocal, full support, n={n_max} (sparse output)",
            lambda mod: mod.reciprocal_coeffs(support_all, ones_all, 1, n_max),
        ),
        (
            f"convolution certificate, n={n_max}",
            lambda mod: mod.convolve_trunc(indicator_ap, recip_ap, n_max),
        ),
        (
            f"composition counts to 2^{count_n}",
            lambda mod: mod.reciprocal_coeffs(support_small, ones_small, 1, count_n),
        ),
        (
            f"complex Horner, {len(coeffs) - 1} coeffs x {n_points} points",
            lambda mod: mod.polyval_complex(coeffs, zs),
        ),
    ]


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--nmax", type=int, default=10_000)
    parser.add_argument("--points", type=int, default=4096)
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()

    backends = [("python", _pykernels)]
    if _ckernels is not None:
        backends.append(("cython", _ckernels))
    else:
        print("compiled kernels not built; timing the fallback only\n")

    rows = []
    for label, runner in workloads(args.nmax, args.points):
        timings = {name: best_of(lambda m=mod: runner(m), args.repeat) for name, mod in backends}
        rows.append((label, timings))

    width = max(len(label) for label, _ in rows)
    header = f"{'workload':<{width}}  {'python':>9}"
    if _ckernels is not None:
        header += f"  {'cython':>9}  {'speedup':>7}"
    print(header)
    print("-" * len(header))
    for label, timings in rows:
        line = f"{label:<{width}}  {timings['python'] * 1e3:>7.1f}ms"
        if "cython" in timings:
            speedup = timings["python"] / timings["cython"]
            line += f"  {timings['cython'] * 1e3:>7.1f}ms  {speedup:>6.2f}x"
        print(line)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
