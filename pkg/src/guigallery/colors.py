"""HSV color handling: conversions, named buckets and dominant-color profiles.

The palette is 12 hue buckets of 30 degrees centered on 0, 30, ..., 330 plus
black/white/gray for low-saturation or dark pixels. A region's profile is the
per-pixel bucket histogram; the heavy per-pixel tally runs through
guigallery.kernels (compiled when available).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Mapping

import numpy as np

from guigallery import kernels

# Regions larger than this are uniformly subsampled before tallying.
MAX_REGION_PIXELS = 1 << 16
_SAMPLE_SEED = 0x9A77E41


class ColorName(enum.Enum):
    """15 color buckets in canonical order (hue wheel, then achromatic)."""

    RED = "red"
    ORANGE = "orange"
    YELLOW = "yellow"
    CHARTREUSE = "chartreuse"
    GREEN = "green"
    SPRING_GREEN = "spring_green"
    CYAN = "cyan"
    AZURE = "azure"
    BLUE = "blue"
    VIOLET = "violet"
    MAGENTA = "magenta"
    ROSE = "rose"
    BLACK = "black"
    WHITE = "white"
    GRAY = "gray"

    @classmethod
    def parse(cls, name: str) -> "ColorName":
        try:
            return cls(name)
        except ValueError:
            raise ValueError(f"unknown color name: {name!r}") from None

    @property
    def order(self) -> int:
        return _COLOR_ORDER[self]

    def __str__(self) -> str:
        return self.value


CANONICAL_COLORS: tuple[ColorName, ...] = tuple(ColorName)
_COLOR_ORDER = {c: i for i, c in enumerate(CANONICAL_COLORS)}
HUE_BUCKETS: tuple[ColorName, ...] = CANONICAL_COLORS[:12]


@dataclass(frozen=True)
class Hsv:
    """Hue in degrees [0, 360), saturation and value in [0, 1]."""

    h: float
    s: float
    v: float

    def __post_init__(self) -> None:
        if not 0.0 <= self.h < 360.0:
            raise ValueError(f"hue out of [0, 360): {self.h}")
        if not 0.0 <= self.s <= 1.0 or not 0.0 <= self.v <= 1.0:
            raise ValueError(f"s/v out of [0, 1]: ({self.s}, {self.v})")


@dataclass(frozen=True)
class ColorThresholds:
    """Achromatic cutoffs: v below black_v is black; saturation below gray_s
    is white when v exceeds white_v, otherwise gray."""

    black_v: float = 0.15
    gray_s: float = 0.15
    white_v: float = 0.85


DEFAULT_THRESHOLDS = ColorThresholds()


@dataclass(frozen=True)
class ColorProfile:
    """Bucket histogram of a pixel region; primary is the argmax bucket
    (ties broken by canonical color order). Fractions sum to 1."""

    primary: ColorName
    histogram: Mapping[ColorName, float]

    def __post_init__(self) -> None:
        total = sum(self.histogram.values())
        if abs(total - 1.0) > 1e-9:
            raise ValueError(f"histogram sums to {total}, expected 1")
        if self.primary is not _argmax(self.histogram):
            raise ValueError(f"primary {self.primary} is not the histogram argmax")

    @classmethod
    def from_counts(cls, counts: Mapping[ColorName, int]) -> "ColorProfile":
        total = sum(counts.values())
        if total <= 0:
            raise ValueError("empty color tally")
        histogram = {
            name: count / total for name, count in counts.items() if count > 0
        }
        return cls(primary=_argmax(histogram), histogram=histogram)

    def fraction(self, name: ColorName) -> float:
        return self.histogram.get(name, 0.0)


def _argmax(histogram: Mapping[ColorName, float]) -> ColorName:
    return max(histogram, key=lambda name: (histogram[name], -name.order))


def rgb_to_hsv(r: int, g: int, b: int) -> Hsv:
    """Hexcone conversion of 8-bit channels. h is 0 for achromatic input."""
    for channel in (r, g, b):
        if not 0 <= channel <= 255:
            raise ValueError(f"channel out of [0, 255]: {channel}")
    mx = max(r, g, b)
    mn = min(r, g, b)
    delta = mx - mn
    v = mx / 255.0
    s = 0.0 if mx == 0 else delta / mx
    if delta == 0:
        h = 0.0
    elif mx == r:
        h = (60.0 * (g - b) / delta) % 360.0
    elif mx == g:
        h = 60.0 * (b - r) / delta + 120.0
    else:
        h = 60.0 * (r - g) / delta + 240.0
    return Hsv(h, s, v)


def hsv_to_rgb(hsv: Hsv) -> tuple[int, int, int]:
    """Inverse hexcone conversion, quantized half-up to 8 bits per channel."""
    h, s, v = hsv.h, hsv.s, hsv.v
    sector = int(h / 60.0) % 6
    f = h / 60.0 - int(h / 60.0)
    p = v * (1.0 - s)
    q = v * (1.0 - s * f)
    t = v * (1.0 - s * (1.0 - f))
    r, g, b = (
        (v, t, p),
        (q, v, p),
        (p, v, t),
        (p, q, v),
        (t, p, v),
        (v, p, q),
    )[sector]
    return (int(r * 255.0 + 0.5), int(g * 255.0 + 0.5), int(b * 255.0 + 0.5))


def color_name(hsv: Hsv, thresholds: ColorThresholds = DEFAULT_THRESHOLDS) -> ColorName:
    """Quantize to the 15-bucket palette.

    Hue buckets are 30 degrees wide centered on multiples of 30; an exact
    boundary (15, 45, ...) belongs to the bucket above it.
    """
    if hsv.v < thresholds.black_v:
        return ColorName.BLACK
    if hsv.s < thresholds.gray_s:
        return ColorName.WHITE if hsv.v > thresholds.white_v else ColorName.GRAY
    bucket = int((hsv.h + 15.0) // 30.0) % 12
    return HUE_BUCKETS[bucket]


def bucket_of_rgb(
    r: int, g: int, b: int, thresholds: ColorThresholds = DEFAULT_THRESHOLDS
) -> ColorName:
    return color_name(rgb_to_hsv(r, g, b), thresholds)


def dominant_color(
    region: np.ndarray, thresholds: ColorThresholds = DEFAULT_THRESHOLDS
) -> ColorProfile:
    """Profile an RGB region (any shape ending in 3 channels, 8-bit).

    Regions beyond MAX_REGION_PIXELS are subsampled uniformly without
    replacement using a fixed seed, so profiles are deterministic.
    """
    pixels = np.asarray(region, dtype=np.uint8).reshape(-1, 3)
    if pixels.shape[0] == 0:
        raise ValueError("empty region")
    if pixels.shape[0] > MAX_REGION_PIXELS:
        rng = np.random.default_rng(_SAMPLE_SEED)
        keep = rng.choice(pixels.shape[0], MAX_REGION_PIXELS, replace=False)
        keep.sort()
        pixels = pixels[keep]
    counts = kernels.bucket_counts(
        np.ascontiguousarray(pixels),
        thresholds.black_v,
        thresholds.gray_s,
        thresholds.white_v,
    )
    return ColorProfile.from_counts(
        {CANONICAL_COLORS[i]: int(n) for i, n in enumerate(counts) if n > 0}
    )
