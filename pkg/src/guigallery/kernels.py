"""Kernel backend selection.

Imports the compiled extension when it was built, otherwise the NumPy
fallback. Both expose the same functions with identical results; see
benchmarks/bench_kernels.py for the speed comparison.
"""

from __future__ import annotations

try:
    from guigallery import _native as _impl

    BACKEND = "native"
except ImportError:  # extension not built on this install
    from guigallery import _fallback as _impl

    BACKEND = "python"

bucket_counts = _impl.bucket_counts
pair_iou = _impl.pair_iou

__all__ = ["BACKEND", "bucket_counts", "pair_iou"]
