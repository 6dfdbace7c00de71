"""Design demographics: the four distributions over a query's match set.

Computed over the full match set (pagination is ignored), shaped for the
UI's pie/scatter/bar charts. Only observed keys appear in the tallies.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from guigallery.colors import ColorName
from guigallery.index import GalleryIndex, QuerySpec
from guigallery.model import ComponentClass

# Scatter payloads beyond this are subsampled; counts stay exact.
MAX_SIZE_POINTS = 10_000
_SAMPLE_SEED = 0x51E3D


@dataclass(frozen=True)
class Demographics:
    class_counts: dict[ComponentClass, int]
    color_counts: dict[ColorName, int]
    size_points: list[tuple[int, int]]
    category_counts: dict[str, int]

    @property
    def total(self) -> int:
        return sum(self.class_counts.values())


def compute_demographics(
    index: GalleryIndex, q: QuerySpec, *, max_size_points: int = MAX_SIZE_POINTS
) -> Demographics:
    """Tally class, primary color, (w, h) and owning-app category over every
    component matching q."""
    matched = index.matches(q)

    class_counts: dict[ComponentClass, int] = {}
    color_counts: dict[ColorName, int] = {}
    category_counts: dict[str, int] = {}
    size_points: list[tuple[int, int]] = []
    for rec in matched:
        class_counts[rec.component_class] = class_counts.get(rec.component_class, 0) + 1
        color_counts[rec.color.primary] = color_counts.get(rec.color.primary, 0) + 1
        category = index.app(rec.app_id).category
        category_counts[category] = category_counts.get(category, 0) + 1
        size_points.append((rec.box.w, rec.box.h))

    if len(size_points) > max_size_points:
        rng = np.random.default_rng(_SAMPLE_SEED)
        keep = rng.choice(len(size_points), max_size_points, replace=False)
        keep.sort()
        size_points = [size_points[i] for i in keep]

    return Demographics(class_counts, color_counts, size_points, category_counts)
