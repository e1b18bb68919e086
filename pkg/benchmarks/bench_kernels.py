"""Time each kernel under the numba and numpy backends.

    python3 benchmarks/bench_kernels.py [--repeat 3]

The first numba call per kernel is reported separately since it includes
compilation (or loading from the on-disk cache).
"""
import argparse
import time

import numpy as np

from fibtools import _accel, kernels

CASES = {
    "walk_logs n=500 x20000": lambda: kernels.walk_logs(
        500, np.array([kernels.walk_seed(1, w) for w in range(20000)], dtype=np.uint64)
    ),
    "sign_tree_abs_sum n=13": lambda: kernels.sign_tree_abs_sum(13),
    "count_balanced n=16": lambda: kernels.count_balanced(16),
    "balance_witness len=4096": lambda: kernels.balance_witness(np.resize([0, 1, 0, 0, 1], 4096)),
    "count_nonadjacent a=10^4": lambda: kernels.count_nonadjacent(
        [1, 2, 3, 5, 8, 13, 21, 34, 55, 89, 144, 233, 377, 610, 987, 1597, 2584, 4181, 6765], 10_000
    ),
    "residue_mask m=2^22": lambda: kernels.residue_mask(1 << 22),
    "even_popcount_upto 10^7": lambda: kernels.even_popcount_upto(10**7),
}


def timed(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    backends = ["numba", "numpy"] if _accel.HAVE_NUMBA else ["numpy"]
    print(f"{'kernel':28s} {'numba first':>12s} {'numba':>10s} {'numpy':>10s} {'speedup':>8s}")
    for name, fn in CASES.items():
        row = {}
        for b in backends:
            with _accel.use_backend(b):
                if b == "numba":
                    t0 = time.perf_counter()
                    fn()
                    row["first"] = time.perf_counter() - t0
                row[b] = timed(fn, args.repeat)
        nb = row.get("numba", float("nan"))
        speedup = row["numpy"] / nb if nb == nb else float("nan")
        print(f"{name:28s} {row.get('first', float('nan')):12.4f} {nb:10.4f} {row['numpy']:10.4f} {speedup:8.1f}x")


if __name__ == "__main__":
    main()
