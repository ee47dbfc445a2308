#!/usr/bin/env python3
"""Benchmark the segment-pair scan: numba kernel vs pure-numpy fallback.

The scan is the O(grid^2) heart of the numeric crossing finder.  This script
times both backends on the same sampled curve and reports the speedup, plus
an end-to-end timing of the numeric finder.

Usage:
    python benchmarks/bench_crossing_scan.py [--grid 2048] [--repeats 5]
"""

from __future__ import annotations

import argparse
import math
import time

import numpy as np

from fourierknot import TorusParams, find_crossings_numeric, gen_theorem_knot
from fourierknot import _kernels


def sample_curve(p: int, q: int, grid: int):
    knot = gen_theorem_knot(TorusParams(p, q))
    ts = (np.arange(grid + 1) + 0.5 * (math.sqrt(5.0) - 1.0)) * (2 * math.pi / grid)
    px = np.ascontiguousarray(knot.x.eval(ts))
    py = np.ascontiguousarray(knot.y.eval(ts))
    px[-1] = px[0]
    py[-1] = py[0]
    return knot, px, py


def best_of(fn, repeats: int) -> float:
    best = math.inf
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--grid", type=int, default=2048)
    ap.add_argument("--repeats", type=int, default=5)
    ap.add_argument("-p", type=int, default=3)
    ap.add_argument("-q", type=int, default=7)
    args = ap.parse_args()

    knot, px, py = sample_curve(args.p, args.q, args.grid)
    have_numba = _kernels._scan_jit is not None

    print(f"curve T({args.p},{args.q}), grid {args.grid} "
          f"({args.grid * (args.grid - 3) // 2} segment pairs), best of {args.repeats}")
    rows = []
    if have_numba:
        _kernels._scan_jit(px, py)  # compile once outside the timing
        t_numba = best_of(lambda: _kernels._scan_jit(px, py), args.repeats)
        rows.append(("numba @njit", t_numba))
    else:
        print("numba backend unavailable (FOURIERKNOT_NO_NUMBA set or numba missing)")
        t_numba = None
    t_numpy = best_of(lambda: _kernels.scan_pairs_numpy(px, py), args.repeats)
    rows.append(("numpy blocked", t_numpy))

    for name, t in rows:
        print(f"  scan {name:<14} {t * 1e3:9.2f} ms")
    if t_numba is not None:
        print(f"  speedup numba/numpy: {t_numpy / t_numba:.1f}x")

    t_full = best_of(lambda: find_crossings_numeric(knot, args.grid), max(2, args.repeats // 2))
    n = len(find_crossings_numeric(knot, args.grid))
    print(f"  full numeric finder ({_kernels.backend()} backend): {t_full * 1e3:.2f} ms, {n} crossings")


if __name__ == "__main__":
    main()
