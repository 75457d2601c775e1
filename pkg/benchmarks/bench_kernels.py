"""Compare the compiled and numpy kernel backends against exact Fractions.

    python benchmarks/bench_kernels.py --points 2000 --repeat 3
"""
from __future__ import annotations

import argparse
import random
import time
from fractions import Fraction

import numpy as np

from exotic_metrics import kernels
from exotic_metrics.cobweb import CobwebSpace, cobweb_distance


def best_of(repeat, fn):
    times = []
    for _ in range(repeat):
        start = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - start)
    return min(times), out


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--points", type=int, default=2000)
    ap.add_argument("--vortices", type=int, default=12)
    ap.add_argument("--exact-points", type=int, default=300,
                    help="sample size for the Fraction baseline (it is quadratic and slow)")
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)

    eps = Fraction(2)
    space = CobwebSpace(tuple(range(args.vortices)), eps, grid=2**10)
    rng = random.Random(args.seed)
    points = [space.sample(rng) for _ in range(args.points)]
    enc = kernels.encode(points, eps)
    thresh = Fraction(3, 2)

    backends = ["python"]
    try:
        kernels.backend("cython")
        backends.insert(0, "cython")
    except ImportError:
        print("compiled kernels not built; timing the numpy backend only")

    print(f"{args.points} cobweb points, {args.vortices} vortices, active backend: {kernels.BACKEND}")
    print(f"{'operation':<14}{'backend':<10}{'seconds':>10}")
    results = {}
    for name in backends:
        impl = kernels.backend(name)
        t_pair, mat = best_of(args.repeat, lambda: kernels.pairwise(enc, impl))
        t_chain, labels = best_of(args.repeat, lambda: kernels.chain_labels(enc, thresh, impl))
        results[name] = (mat, labels)
        print(f"{'pairwise':<14}{name:<10}{t_pair:>10.4f}")
        print(f"{'chain_labels':<14}{name:<10}{t_chain:>10.4f}")
    if len(results) == 2:
        same = all(np.array_equal(a, b) for a, b in zip(results["cython"], results["python"]))
        print(f"backends agree: {same}")

    m = min(args.exact_points, args.points)
    sub = points[:m]
    t_exact, exact = best_of(1, lambda: [[cobweb_distance(p, q, eps) for q in sub] for p in sub])
    sub_enc = kernels.encode(sub, eps)
    scaled = kernels.pairwise(sub_enc)
    agree = all(Fraction(int(scaled[i, j]), sub_enc.scale) == exact[i][j] for i in range(m) for j in range(m))
    est = t_exact * (args.points / m) ** 2
    print(f"{'pairwise':<14}{'fraction':<10}{t_exact:>10.4f}  ({m} points; ~{est:.1f}s extrapolated)")
    print(f"scaled integers match exact Fractions: {agree}")


if __name__ == "__main__":
    main()
