"""Compare the compiled kernels against the NumPy fallback.

    python benchmarks/bench_kernels.py [--repeat 5]

Prints best-of-``repeat`` wall time per kernel and backend, the speedup, and
the max absolute difference between the two outputs.
"""
import argparse
import timeit

import numpy as np

from fracspec import _kernels_py

try:
    from fracspec import _kernels
except ImportError:
    _kernels = None


def cases(rng):
    # A_n-sized phase matrix: cantor3 at n = 10
    u = rng.integers(0, 3 ** 10, size=(1024, 1), dtype=np.int64)
    v = rng.integers(0, 3 ** 10, size=(1024, 1), dtype=np.int64)
    yield "phase_matrix 1024x1024", "phase_matrix", (u, v, 3 ** 10, -1)
    u2 = rng.integers(-500, 500, size=(1024, 2), dtype=np.int64)
    v2 = rng.integers(-500, 500, size=(4096, 2), dtype=np.int64)
    yield "phase_matrix 1024x4096 d=2", "phase_matrix", (u2, v2, 4096, 1)
    x = rng.uniform(-300, 300, size=(200_000, 1))
    yield "mask_product 2e5 pts x 40", "mask_product", (x, np.array([[1 / 3]]), np.array([[0.0], [2.0]]), 40)
    x2 = rng.uniform(-50, 50, size=(50_000, 2))
    tinv = np.linalg.inv(np.array([[2.0, 1.0], [0.0, 2.0]]))
    digits = np.array([[0, 0], [1, 0], [0, 3], [1, 3]], dtype=float)
    yield "mask_product 5e4 pts d=2 x 60", "mask_product", (x2, tinv, digits, 60)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    if _kernels is None:
        print("compiled extension not built; only the NumPy fallback is available")
    rng = np.random.default_rng(0)
    print(f"{'case':32s} {'python [ms]':>12s} {'compiled [ms]':>14s} {'speedup':>8s} {'max diff':>10s}")
    for label, fn, argv in cases(rng):
        py = getattr(_kernels_py, fn)
        t_py = min(timeit.repeat(lambda: py(*argv), number=1, repeat=args.repeat))
        if _kernels is None:
            print(f"{label:32s} {1e3 * t_py:12.2f} {'-':>14s}")
            continue
        cy = getattr(_kernels, fn)
        t_cy = min(timeit.repeat(lambda: cy(*argv), number=1, repeat=args.repeat))
        diff = float(np.max(np.abs(py(*argv) - cy(*argv))))
        print(f"{label:32s} {1e3 * t_py:12.2f} {1e3 * t_cy:14.2f} {t_py / t_cy:8.2f} {diff:10.1e}")


if __name__ == "__main__":
    main()
