"""NumPy implementations of the hot kernels.

Semantics must match guigallery._native exactly: hue buckets use pure
integer arithmetic and the achromatic cutoffs use the same float64
expressions, so both backends return identical results for any input.
"""

from __future__ import annotations

import numpy as np

# Bucket layout: 0..11 hue wheel (red..rose), 12 black, 13 white, 14 gray.
N_BUCKETS = 15


def bucket_counts(
    pixels: np.ndarray, black_v: float, gray_s: float, white_v: float
) -> np.ndarray:
    """Tally (n, 3) uint8 RGB pixels into the 15 color buckets."""
    px = pixels.astype(np.int64, copy=False)
    r, g, b = px[:, 0], px[:, 1], px[:, 2]
    mx = np.maximum(np.maximum(r, g), b)
    mn = np.minimum(np.minimum(r, g), b)
    delta = mx - mn

    v = mx / 255.0
    s = delta / np.maximum(mx, 1)

    is_black = v < black_v
    low_sat = ~is_black & (s < gray_s)
    is_white = low_sat & (v > white_v)
    is_gray = low_sat & ~(v > white_v)

    # Hue bucket = floor((h + 15) / 30) mod 12, folded into integer math:
    # h*delta is an integer for every sector, so the division is exact.
    r_max = mx == r
    g_max = ~r_max & (mx == g)
    num = np.where(
        r_max,
        60 * (g - b) + np.where(g >= b, 15, 375) * delta,
        np.where(g_max, 60 * (b - r) + 135 * delta, 60 * (r - g) + 255 * delta),
    )
    bucket = (num // (30 * np.maximum(delta, 1))) % 12

    final = np.where(is_black, 12, np.where(is_white, 13, np.where(is_gray, 14, bucket)))
    return np.bincount(final, minlength=N_BUCKETS).astype(np.int64)


def pair_iou(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Intersection-over-union for every box pair.

    Boxes are (n, 4) int64 rows of (x, y, w, h); result is (n, m) float64.
    """
    a = a.astype(np.int64, copy=False)
    b = b.astype(np.int64, copy=False)
    ax1, ay1 = a[:, 0, None], a[:, 1, None]
    ax2, ay2 = ax1 + a[:, 2, None], ay1 + a[:, 3, None]
    bx1, by1 = b[None, :, 0], b[None, :, 1]
    bx2, by2 = bx1 + b[None, :, 2], by1 + b[None, :, 3]

    iw = np.minimum(ax2, bx2) - np.maximum(ax1, bx1)
    ih = np.minimum(ay2, by2) - np.maximum(ay1, by1)
    inter = np.where((iw > 0) & (ih > 0), iw * ih, 0)

    area_a = (a[:, 2] * a[:, 3])[:, None]
    area_b = (b[:, 2] * b[:, 3])[None, :]
    union = area_a + area_b - inter
    return inter / union
