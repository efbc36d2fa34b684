"""Benchmark the compiled Monte Carlo kernels against the NumPy fallback.

Run:  python benchmarks/bench_kernels.py [n_samples]
"""

import sys
import time

import numpy as np

from geoverify import _kernels_py
from geoverify.tubes import Box, random_rotations

try:
    from geoverify import _kernels as _compiled
except ImportError:
    _compiled = None


def timeit(fn, *args, repeats=5):
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    n = int(sys.argv[1]) if len(sys.argv) > 1 else 1_000_000
    rng = np.random.default_rng(0)
    points = rng.uniform(-2.0, 2.0, size=(n, 3))
    dirs = rng.normal(size=(n, 3))
    dirs /= np.linalg.norm(dirs, axis=1, keepdims=True)
    n_poses = max(n // 8, 1)
    rots = random_rotations(n_poses, rng)
    trans = rng.uniform(-1.0, 1.0, size=(n_poses, 3))
    corners = np.ascontiguousarray(Box(1.3, 0.7, 0.9).corners())
    half = Box(1.0, 1.2, 0.8).half

    cases = [
        ("box_tube_mask", (points, half, 0.25)),
        ("silhouette_areas", (dirs, 1.0, 2.0, 3.0)),
        ("corners_in_box", (rots, trans, corners, half)),
    ]

    print(f"n = {n:,} samples ({n_poses:,} poses); best of 5 runs")
    header = f"{'kernel':<20} {'numpy':>10} {'cython':>10} {'speedup':>9}"
    print(header)
    print("-" * len(header))
    for name, args in cases:
        t_py = timeit(getattr(_kernels_py, name), *args)
        if _compiled is None:
            print(f"{name:<20} {t_py * 1e3:>8.1f}ms {'n/a':>10} {'n/a':>9}")
            continue
        t_cy = timeit(getattr(_compiled, name), *args)
        same = np.array_equal(getattr(_kernels_py, name)(*args), getattr(_compiled, name)(*args))
        ratio = t_py / t_cy if t_cy > 0 else float("inf")
        tag = "" if same else "  !! outputs differ"
        print(f"{name:<20} {t_py * 1e3:>8.1f}ms {t_cy * 1e3:>8.1f}ms {ratio:>8.2f}x{tag}")


if __name__ == "__main__":
    main()
