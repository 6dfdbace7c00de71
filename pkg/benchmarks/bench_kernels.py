"""Compare the compiled kernels against the NumPy fallback.

Run: python benchmarks/bench_kernels.py
"""

from __future__ import annotations

import time

import numpy as np

from guigallery import _fallback

try:
    from guigallery import _native
except ImportError:
    _native = None


def best_of(fn, *args, repeats=5, inner=10):
    best = float("inf")
    for _ in range(repeats):
        start = time.perf_counter()
        for _ in range(inner):
            fn(*args)
        best = min(best, (time.perf_counter() - start) / inner)
    return best


def fmt(seconds):
    return f"{seconds * 1e6:9.1f} us"


def bench_bucket_counts(rng):
    print("bucket_counts(n pixels -> 15 color buckets)")
    for n in (1_000, 65_536, 1_000_000):
        pixels = rng.integers(0, 256, (n, 3), dtype=np.uint8)
        pixels = np.ascontiguousarray(pixels)
        py = best_of(_fallback.bucket_counts, pixels, 0.15, 0.15, 0.85)
        line = f"  n={n:>9,}   numpy {fmt(py)}"
        if _native is not None:
            nat = best_of(_native.bucket_counts, pixels, 0.15, 0.15, 0.85)
            line += f"   native {fmt(nat)}   speedup {py / nat:5.1f}x"
            assert (
                _native.bucket_counts(pixels, 0.15, 0.15, 0.85)
                == _fallback.bucket_counts(pixels, 0.15, 0.15, 0.85)
            ).all()
        print(line)


def bench_pair_iou(rng):
    print("pair_iou(n x m box pairs)")
    for n, m in ((10, 10), (100, 100), (500, 500)):
        a = np.column_stack(
            [rng.integers(0, 500, n), rng.integers(0, 500, n),
             rng.integers(1, 200, n), rng.integers(1, 200, n)]
        )
        b = np.column_stack(
            [rng.integers(0, 500, m), rng.integers(0, 500, m),
             rng.integers(1, 200, m), rng.integers(1, 200, m)]
        )
        py = best_of(_fallback.pair_iou, a, b)
        line = f"  {n:>4} x {m:<4}   numpy {fmt(py)}"
        if _native is not None:
            nat = best_of(_native.pair_iou, a, b)
            line += f"   native {fmt(nat)}   speedup {py / nat:5.1f}x"
            assert (_native.pair_iou(a, b) == _fallback.pair_iou(a, b)).all()
        print(line)


def main():
    if _native is None:
        print("compiled kernels not built; timing the NumPy fallback only\n")
    rng = np.random.default_rng(1)
    bench_bucket_counts(rng)
    print()
    bench_pair_iou(rng)


if __name__ == "__main__":
    main()
