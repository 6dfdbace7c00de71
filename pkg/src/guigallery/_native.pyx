# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels: color-bucket tallies and pairwise IoU.

Mirrors guigallery._fallback expression for expression; the hue bucket is
pure integer arithmetic and the achromatic cutoffs use the same float64
operations, so both backends return identical results.
"""

import numpy as np

cimport numpy as cnp

cnp.import_array()

N_BUCKETS = 15


def bucket_counts(const unsigned char[:, ::1] pixels,
                  double black_v, double gray_s, double white_v):
    """Tally (n, 3) uint8 RGB pixels into the 15 color buckets."""
    cdef Py_ssize_t n = pixels.shape[0]
    cdef cnp.ndarray[cnp.int64_t, ndim=1] out = np.zeros(N_BUCKETS, dtype=np.int64)
    cdef long long[::1] counts = out
    cdef Py_ssize_t i
    cdef long long r, g, b, mx, mn, delta, num, bucket
    cdef double v, s

    for i in range(n):
        r = pixels[i, 0]
        g = pixels[i, 1]
        b = pixels[i, 2]
        mx = r if r >= g else g
        if b > mx:
            mx = b
        mn = r if r <= g else g
        if b < mn:
            mn = b
        delta = mx - mn

        v = mx / 255.0
        if v < black_v:
            counts[12] += 1
            continue
        s = <double>delta / (mx if mx > 0 else 1)
        if s < gray_s:
            if v > white_v:
                counts[13] += 1
            else:
                counts[14] += 1
            continue

        # delta > 0 here (s >= gray_s > 0 would fail otherwise only if
        # gray_s <= 0; numerators below stay positive for every sector).
        if mx == r:
            if g >= b:
                num = 60 * (g - b) + 15 * delta
            else:
                num = 60 * (g - b) + 375 * delta
        elif mx == g:
            num = 60 * (b - r) + 135 * delta
        else:
            num = 60 * (r - g) + 255 * delta
        bucket = (num // (30 * (delta if delta > 0 else 1))) % 12
        counts[bucket] += 1

    return out


def pair_iou(a, b):
    """Intersection-over-union for every box pair.

    Boxes are (n, 4) int64 rows of (x, y, w, h); result is (n, m) float64.
    """
    cdef const long long[:, ::1] av = np.ascontiguousarray(a, dtype=np.int64)
    cdef const long long[:, ::1] bv = np.ascontiguousarray(b, dtype=np.int64)
    cdef Py_ssize_t n = av.shape[0], m = bv.shape[0]
    cdef cnp.ndarray[cnp.float64_t, ndim=2] out = np.empty((n, m), dtype=np.float64)
    cdef double[:, ::1] res = out
    cdef Py_ssize_t i, j
    cdef long long ax1, ay1, ax2, ay2, bx1, by1, bx2, by2
    cdef long long iw, ih, inter, area_a, union_

    for i in range(n):
        ax1 = av[i, 0]
        ay1 = av[i, 1]
        ax2 = ax1 + av[i, 2]
        ay2 = ay1 + av[i, 3]
        area_a = av[i, 2] * av[i, 3]
        for j in range(m):
            bx1 = bv[j, 0]
            by1 = bv[j, 1]
            bx2 = bx1 + bv[j, 2]
            by2 = by1 + bv[j, 3]
            iw = (ax2 if ax2 <= bx2 else bx2) - (ax1 if ax1 >= bx1 else bx1)
            ih = (ay2 if ay2 <= by2 else by2) - (ay1 if ay1 >= by1 else by1)
            inter = iw * ih if (iw > 0 and ih > 0) else 0
            union_ = area_a + bv[j, 2] * bv[j, 3] - inter
            res[i, j] = <double>inter / <double>union_

    return out
