"""Compare the compiled kernels with the pure-Python fallback.

    python3 benchmarks/bench_kernels.py [--bound 3] [--repeat 3]

Every kernel is run on identical inputs by both backends; outputs are
checked for equality before timings are reported.
"""

import argparse
import random
import sys
import timeit

from fanoq import _kernels_py as py
from fanoq.lattice2d import primitive_points

try:
    from fanoq import _kernels as cy
except ImportError:
    sys.exit("compiled extension not built; run: pip install -e . --no-build-isolation")


def random_matrices(count, n, rng):
    out = []
    for _ in range(count):
        A = [[0] * n for _ in range(n)]
        for i in range(n):
            for j in range(i + 1, n):
                a = rng.randint(-8, 8)
                A[i][j], A[j][i] = a, -a
        out.append(A)
    return out


def cases(bound, rng):
    pts = [tuple(p) for p in primitive_points(bound)]
    ranks = list(range(len(pts)))
    mats = random_matrices(2000, 8, rng)
    weights = [[rng.randint(-5, 5) for _ in range(8)] for _ in mats]
    return {
        f"fano_cycles (bound {bound})": lambda k: k.fano_cycles(pts),
        f"fano_classes GL (bound {bound})": lambda k: k.fano_classes(pts, ranks, True),
        "mutate_exchange x2000 (8x8)": lambda k: [k.mutate_exchange(A, 3, 2) for A in mats],
        "balance_sums x2000 (8x8)": lambda k: [k.balance_sums(A, w) for A, w in zip(mats, weights)],
    }


def normalize(x):
    if isinstance(x, dict):
        return x
    if isinstance(x, (list, tuple)):
        return [normalize(v) for v in x]
    return x


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--bound", type=int, default=3)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    rng = random.Random(0)
    print(f"{'kernel':36} {'python s':>10} {'cython s':>10} {'speedup':>8}")
    for name, fn in cases(args.bound, rng).items():
        if normalize(fn(py)) != normalize(fn(cy)):
            sys.exit(f"{name}: backends disagree")
        t_py = min(timeit.repeat(lambda: fn(py), number=1, repeat=args.repeat))
        t_cy = min(timeit.repeat(lambda: fn(cy), number=1, repeat=args.repeat))
        print(f"{name:36} {t_py:10.4f} {t_cy:10.4f} {t_py / t_cy:7.1f}x")


if __name__ == "__main__":
    main()
