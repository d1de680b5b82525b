#!/usr/bin/env python3
"""Compare the numba and pure-numpy kernel paths.

Usage:
    python benchmarks/bench_kernels.py [--repeat 3]

Each kernel is timed on inputs of the size the verification runs actually
use; the first numba call (compilation, or loading the on-disk cache) is done
before timing.  Results from both paths are compared for equality.
"""
import argparse
import time

import numpy as np

from gklab import kernels
from gklab.aut import all_generators, group_closure
from gklab.curve import enumerate_points, genus
from gklab.numsg import evaluation_matrix, rr_basis
from gklab.tower import build_tower


def best_of(fn, repeat):
    times, out = [], None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


def cases():
    t9 = build_tower(3, 2)
    rng = np.random.default_rng(0)
    # dense operands at the top degree of the n = 9 identities
    a, b = rng.integers(0, t9.n2, 730), rng.integers(0, t9.n2, 730)
    yield "poly_mul deg 729 n=9", lambda be: kernels.poly_mul(a, b, t9.small_add, t9.small_mul, backend=be)

    t3 = build_tower(3, 1)
    H = group_closure(all_generators(t3)).elements
    g = all_generators(t3)[-1].block
    yield f"mat3_batch {len(H)} x 3x3", lambda be: kernels.mat3_batch(H, g, t3, backend=be)

    pts = enumerate_points(t3)
    M = evaluation_matrix(pts, rr_basis(3, 2 * genus(3) + 10))[:400]
    yield f"rank {M.shape[0]}x{M.shape[1]}", lambda be: kernels.rank(M, t3, backend=be)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    if "numba" not in kernels.BACKENDS:
        raise SystemExit("numba is not importable; nothing to compare")
    print(f"{'kernel':<28} {'numba [s]':>10} {'numpy [s]':>10} {'speedup':>8}")
    for name, fn in cases():
        fn("numba")  # warm-up / compile
        t_jit, r_jit = best_of(lambda: fn("numba"), args.repeat)
        t_np, r_np = best_of(lambda: fn("numpy"), args.repeat)
        if not np.array_equal(np.asarray(r_jit), np.asarray(r_np)):
            raise SystemExit(f"{name}: backends disagree")
        print(f"{name:<28} {t_jit:>10.4f} {t_np:>10.4f} {t_np / t_jit:>7.1f}x")


if __name__ == "__main__":
    main()
