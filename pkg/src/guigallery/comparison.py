"""Side-by-side company comparison.

One row per component class (11 rows, canonical order), one column per
selected company. A cell holds the ids of up to six representative
components, ranked by owning-app downloads, then owning-app rating, then
component_id; a company with none of that class gets the distinguished
NONE cell. Each company also gets its primary-color distribution.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Optional

from guigallery.colors import ColorName
from guigallery.index import GalleryIndex
from guigallery.model import CANONICAL_CLASSES, ComponentClass

CELL_SIZE = 6

Cell = Optional[tuple[str, ...]]  # None means the company has no such components


class UnknownCompany(KeyError):
    pass


@dataclass(frozen=True)
class ComparisonTable:
    companies: tuple[str, ...]
    rows: Mapping[ComponentClass, Mapping[str, Cell]]
    color_dist: Mapping[str, Mapping[ColorName, float]]

    def cell(self, cls: ComponentClass, company: str) -> Cell:
        return self.rows[cls][company]


def eligible_companies(
    index: GalleryIndex, min_apps: int = 1, min_downloads: int = 0
) -> list[str]:
    """Developers with at least min_apps apps whose best download count
    reaches min_downloads, ordered by total downloads descending."""
    if min_apps < 1:
        raise ValueError(f"min_apps must be >= 1, got {min_apps}")
    if min_downloads < 0:
        raise ValueError(f"negative min_downloads: {min_downloads}")
    picked = []
    for key, apps in index.developers().items():
        if len(apps) >= min_apps and max(a.downloads for a in apps) >= min_downloads:
            picked.append((key, sum(a.downloads for a in apps)))
    picked.sort(key=lambda item: (-item[1], item[0]))
    return [key for key, _ in picked]


def compare(index: GalleryIndex, companies: list[str]) -> ComparisonTable:
    """Build the 11-row comparison table for the given company keys."""
    if not companies:
        raise ValueError("no companies selected")
    known = index.developers()
    for company in companies:
        if company not in known:
            raise UnknownCompany(company)

    per_company = {c: index.components_of_developer(c) for c in companies}

    rows: dict[ComponentClass, dict[str, Cell]] = {}
    for cls in CANONICAL_CLASSES:
        row: dict[str, Cell] = {}
        for company in companies:
            candidates = [
                rec for rec in per_company[company] if rec.component_class is cls
            ]
            if not candidates:
                row[company] = None
                continue
            candidates.sort(
                key=lambda rec: (
                    -index.app(rec.app_id).downloads,
                    -index.app(rec.app_id).rating,
                    rec.component_id,
                )
            )
            row[company] = tuple(rec.component_id for rec in candidates[:CELL_SIZE])
        rows[cls] = row

    color_dist: dict[str, dict[ColorName, float]] = {}
    for company in companies:
        counts: dict[ColorName, int] = {}
        for rec in per_company[company]:
            counts[rec.color.primary] = counts.get(rec.color.primary, 0) + 1
        total = sum(counts.values())
        color_dist[company] = (
            {name: n / total for name, n in counts.items()} if total else {}
        )

    return ComparisonTable(tuple(companies), rows, color_dist)
