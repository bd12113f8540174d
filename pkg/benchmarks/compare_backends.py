"""Naive per-frequency DFT vs the folded spectra on the numpy and numba kernels.

    python benchmarks/compare_backends.py [--quick]
"""
import sys

from foldspec import bench

M_LIST = (1_000, 10_000, 100_000, 1_000_000)
L_LIST = (7, 18, 36, 64)

if __name__ == "__main__":
    quick = "--quick" in sys.argv
    records = bench.run_bench(M_LIST[:3] if quick else M_LIST, L_LIST, repeats=5)
    print(f"{'m':>9} {'l':>3} {'method':<12} {'trig':>10} {'madd':>11} {'median ms':>10} {'speedup':>8}")
    naive_ns = {}
    for r in records:
        if r.method == "naive":
            naive_ns[r.m, r.l] = r.ns_median
        speedup = naive_ns[r.m, r.l] / r.ns_median
        print(f"{r.m:>9} {r.l:>3} {r.method:<12} {r.trig_count:>10} {r.madd_count:>11} "
              f"{r.ns_median / 1e6:>10.3f} {speedup:>8.1f}")
