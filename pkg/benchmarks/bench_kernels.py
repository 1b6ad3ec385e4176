"""Compare the numba and numpy kernel backends.

    python benchmarks/bench_kernels.py [--repeat 3]

Times the coverage verifier on covering arrays (worst case: every subset is
scanned) and the Monte Carlo missing-word counter.
"""

import argparse
import time

from lllcover._kernels import available_backends
from lllcover.arrays import scan_first_deficient
from lllcover.generator import equal_weight_columns, generate_covering, make_rng


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()
    backends = available_backends()

    cases = []
    for q, t, n in ((2, 3, 20), (2, 3, 40), (3, 3, 20), (2, 4, 16)):
        arr = generate_covering(q, t, n, seed=0).array
        cases.append((f"verify q={q} t={t} n={n} k={arr.k}", arr, t))

    print(f"{'case':38s}" + "".join(f"{name:>12s}" for name in backends) + "     speedup")
    for label, arr, t in cases:
        row = {}
        for name, mod in backends.items():
            scan_first_deficient(arr, t, kernels=mod)  # warm-up / JIT compile
            row[name] = best_of(lambda: scan_first_deficient(arr, t, kernels=mod), args.repeat)
        print(_fmt(label, row))

    for q, t, k, trials in ((2, 3, 2, 1_000_000), (2, 4, 8, 500_000)):
        cols = equal_weight_columns(make_rng(1), q, k, trials * t).reshape(trials, t, k)
        row = {}
        for name, mod in backends.items():
            mod.count_missing_all_ones(cols[:10])
            row[name] = best_of(lambda: mod.count_missing_all_ones(cols), args.repeat)
        print(_fmt(f"mc-count q={q} t={t} k={k} trials={trials}", row))


def _fmt(label, row):
    line = f"{label:38s}" + "".join(f"{v * 1e3:10.2f}ms" for v in row.values())
    if "numba" in row and "numpy" in row:
        line += f"  {row['numpy'] / row['numba']:8.1f}x"
    return line


if __name__ == "__main__":
    main()
