"""Throughput comparison of the two residue-symbol sweep backends.

Runs the same character-sum workload through the numba Euclidean kernel
and the vectorized numpy factorization path, reports symbols/second for
each, and cross-checks that the results agree.

Usage: python3 benchmarks/bench_accel.py [--q 5] [--deg-g 4] [--dmax 5]
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from mdslab import accel
from mdslab.fqpoly import degree, field


def workload(fq, deg_g: int, count: int):
    gs = []
    for g in fq.monic_enum(deg_g):
        if fq.is_squarefree(g):
            gs.append(g)
        if len(gs) == count:
            break
    return gs


def run_numba(fq, gs, dmax: int):
    leg = np.asarray(fq.legendre, dtype=np.int64)
    out = []
    for g in gs:
        garr = np.asarray(g, dtype=np.int64)
        out.append(accel._sums_by_degree_kernel(fq.q, garr, degree(g), dmax, leg))
    return out


def run_numpy(fq, gs, dmax: int):
    return [accel._numpy_backend.sums_by_degree(fq, g, dmax) for g in gs]


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--q", type=int, default=5)
    ap.add_argument("--deg-g", type=int, default=4)
    ap.add_argument("--dmax", type=int, default=5)
    ap.add_argument("--count", type=int, default=50, help="number of moduli g")
    args = ap.parse_args()

    fq = field(args.q)
    gs = workload(fq, args.deg_g, args.count)
    n_symbols = len(gs) * sum(args.q**d for d in range(args.dmax + 1))
    print(f"q={args.q}, {len(gs)} moduli of degree {args.deg_g}, "
          f"sweep degrees 0..{args.dmax} -> {n_symbols} symbols per run")

    results = {}
    timings = {}
    if accel.HAVE_NUMBA:
        run_numba(fq, gs[:1], 1)  # compile outside the timed region
        t0 = time.perf_counter()
        results["numba"] = run_numba(fq, gs, args.dmax)
        timings["numba"] = time.perf_counter() - t0
    else:
        print("numba unavailable; benchmarking numpy path only")
    t0 = time.perf_counter()
    results["numpy"] = run_numpy(fq, gs, args.dmax)
    timings["numpy"] = time.perf_counter() - t0

    for name, dt in timings.items():
        print(f"{name:>6}: {dt:8.3f} s   {n_symbols / dt:12.0f} symbols/s")
    if len(results) == 2:
        agree = all(
            np.array_equal(a, b) for a, b in zip(results["numba"], results["numpy"])
        )
        print("backends agree:", agree)
        if not agree:
            raise SystemExit(1)


if __name__ == "__main__":
    main()
