#!/usr/bin/env python3
"""Benchmark the compiled suffix-prefix overlap kernels against the pure
Python fallback.

Usage: python3 benchmarks/bench_kernels.py [--n-reads N] [--read-length L]
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from diploidlab import IS_COMPILED
from diploidlab._kernels import _fallback
from diploidlab.simulate import SimulationParams, sample_reads_poisson, simulate_diploid

try:
    from diploidlab._kernels import _speedups
except ImportError:
    _speedups = None


def bench(fn, *args, repeat: int = 3):
    best = float("inf")
    result = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best, result


def main() -> int:
    ap = argparse.ArgumentParser()
    ap.add_argument("--n-reads", type=int, default=300)
    ap.add_argument("--read-length", type=int, default=80)
    ap.add_argument("--genome-length", type=int, default=2000)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    g = simulate_diploid(SimulationParams(args.genome_length, 0.01,
                                          seed=args.seed))
    rs = sample_reads_poisson(g, args.n_reads / (2 * g.length),
                              args.read_length, seed=args.seed)
    seqs = [r.seq.encode() for r in rs]
    print(f"compiled extension available: {IS_COMPILED}")
    print(f"{len(seqs)} reads of length {args.read_length}, "
          f"all-pairs overlap matrix ({len(seqs) ** 2} pairs)")

    t_py, m_py = bench(_fallback.sp_overlap_matrix, seqs)
    print(f"pure python : {t_py * 1e3:10.1f} ms")
    if _speedups is not None:
        t_c, m_c = bench(_speedups.sp_overlap_matrix, seqs)
        assert np.array_equal(m_py, m_c), "kernel disagreement"
        print(f"compiled    : {t_c * 1e3:10.1f} ms   "
              f"({t_py / t_c:.1f}x speedup, results identical)")
    else:
        print("compiled    : unavailable (extension not built)")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
