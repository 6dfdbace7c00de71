"""Multi-faceted index over component records.

Facets combine conjunctively: class equality, owning-app category equality,
primary-color equality, case-folded substring text match and inclusive
width/height ranges. Results use one deterministic ranking everywhere:
owning-app downloads descending, then component_id ascending.

The index is immutable after build; rebuilds swap the whole object.
"""

from __future__ import annotations

import bisect
from dataclasses import dataclass
from typing import Iterable, Mapping, Optional, Sequence

from guigallery.colors import ColorName
from guigallery.model import (
    AppRecord,
    ComponentClass,
    ComponentRecord,
    company_key,
    normalize_text,
)

MAX_PAGE_LIMIT = 200
DEFAULT_PAGE_LIMIT = 30


class InvalidQuery(ValueError):
    """A QuerySpec field violates its bounds."""

    def __init__(self, field_name: str, message: str):
        super().__init__(message)
        self.field_name = field_name


class UnknownComponent(KeyError):
    pass


class IndexBuildError(ValueError):
    pass


@dataclass(frozen=True)
class QuerySpec:
    """One multi-faceted search request. Absent facets do not filter."""

    component_class: Optional[ComponentClass] = None
    category: Optional[str] = None
    color: Optional[ColorName] = None
    text: Optional[str] = None
    min_w: Optional[int] = None
    max_w: Optional[int] = None
    min_h: Optional[int] = None
    max_h: Optional[int] = None
    offset: int = 0
    limit: int = DEFAULT_PAGE_LIMIT

    def __post_init__(self) -> None:
        if self.offset < 0:
            raise InvalidQuery("offset", f"negative offset: {self.offset}")
        if not 1 <= self.limit <= MAX_PAGE_LIMIT:
            raise InvalidQuery(
                "limit", f"limit must be in [1, {MAX_PAGE_LIMIT}]: {self.limit}"
            )
        for lo_name, hi_name in (("min_w", "max_w"), ("min_h", "max_h")):
            lo = getattr(self, lo_name)
            hi = getattr(self, hi_name)
            if lo is not None and hi is not None and lo > hi:
                raise InvalidQuery(
                    lo_name, f"{lo_name} > {hi_name} ({lo} > {hi})"
                )


@dataclass(frozen=True)
class ResultPage:
    items: tuple[ComponentRecord, ...]
    total: int
    offset: int
    limit: int


@dataclass(frozen=True)
class SimilarityWeights:
    """Non-negative weights over the five correlation terms, summing to 1."""

    w_app: float = 0.2
    w_developer: float = 0.2
    w_class: float = 0.2
    w_color: float = 0.2
    w_text: float = 0.2

    def __post_init__(self) -> None:
        values = (self.w_app, self.w_developer, self.w_class, self.w_color, self.w_text)
        if any(w < 0 for w in values):
            raise ValueError(f"negative similarity weight in {values}")
        if abs(sum(values) - 1.0) > 1e-9:
            raise ValueError(f"similarity weights sum to {sum(values)}, expected 1")


DEFAULT_WEIGHTS = SimilarityWeights()


def _token_set(text: str) -> frozenset[str]:
    return frozenset(text.casefold().split())


def _jaccard(a: frozenset[str], b: frozenset[str]) -> float:
    if not a and not b:
        return 1.0  # equal (empty) token sets
    union = len(a | b)
    return len(a & b) / union


def _histogram_overlap(a: Mapping, b: Mapping) -> float:
    l1 = 0.0
    for key in a.keys() | b.keys():
        l1 += abs(a.get(key, 0.0) - b.get(key, 0.0))
    return 1.0 - 0.5 * l1


@dataclass
class _Entry:
    record: ComponentRecord
    rank: int
    folded_text: str
    tokens: frozenset[str]
    category: str
    developer: str


class GalleryIndex:
    """Immutable search index; build once per ingest, share across readers."""

    def __init__(
        self, components: Sequence[ComponentRecord], apps: Sequence[AppRecord]
    ):
        self._apps: dict[str, AppRecord] = {a.app_id: a for a in apps}
        for comp in components:
            if comp.app_id not in self._apps:
                raise IndexBuildError(
                    f"component {comp.component_id} references unknown app {comp.app_id!r}"
                )

        ranked = sorted(
            components,
            key=lambda c: (-self._apps[c.app_id].downloads, c.component_id),
        )
        self._entries: dict[str, _Entry] = {}
        self._order: list[_Entry] = []
        for rank, comp in enumerate(ranked):
            if comp.component_id in self._entries:
                raise IndexBuildError(f"duplicate component_id {comp.component_id!r}")
            app = self._apps[comp.app_id]
            entry = _Entry(
                record=comp,
                rank=rank,
                folded_text=comp.text.casefold(),
                tokens=_token_set(comp.text),
                category=app.category,
                developer=company_key(app.developer),
            )
            self._entries[comp.component_id] = entry
            self._order.append(entry)

        # Rank-ordered posting lists per discrete facet.
        self._by_class: dict[ComponentClass, list[_Entry]] = {}
        self._by_category: dict[str, list[_Entry]] = {}
        self._by_color: dict[ColorName, list[_Entry]] = {}
        self._by_developer: dict[str, list[_Entry]] = {}
        for entry in self._order:
            self._by_class.setdefault(entry.record.component_class, []).append(entry)
            self._by_category.setdefault(entry.category, []).append(entry)
            self._by_color.setdefault(entry.record.color.primary, []).append(entry)
            self._by_developer.setdefault(entry.developer, []).append(entry)

        # Sorted width/height arrays for range-driven candidate selection.
        self._by_w = sorted(self._order, key=lambda e: e.record.box.w)
        self._w_keys = [e.record.box.w for e in self._by_w]
        self._by_h = sorted(self._order, key=lambda e: e.record.box.h)
        self._h_keys = [e.record.box.h for e in self._by_h]

    # -- accessors -----------------------------------------------------------

    def __len__(self) -> int:
        return len(self._order)

    def __contains__(self, component_id: str) -> bool:
        return component_id in self._entries

    @property
    def components(self) -> list[ComponentRecord]:
        return [e.record for e in self._order]

    @property
    def apps(self) -> list[AppRecord]:
        return list(self._apps.values())

    def component(self, component_id: str) -> ComponentRecord:
        try:
            return self._entries[component_id].record
        except KeyError:
            raise UnknownComponent(component_id) from None

    def app_of(self, component_id: str) -> AppRecord:
        return self._apps[self.component(component_id).app_id]

    def app(self, app_id: str) -> AppRecord:
        return self._apps[app_id]

    def developers(self) -> dict[str, list[AppRecord]]:
        """Company key -> that developer's apps."""
        result: dict[str, list[AppRecord]] = {}
        for app in self._apps.values():
            result.setdefault(company_key(app.developer), []).append(app)
        return result

    def components_of_developer(self, developer_key: str) -> list[ComponentRecord]:
        return [e.record for e in self._by_developer.get(developer_key, [])]

    # -- query ----------------------------------------------------------------

    def matches(self, q: QuerySpec) -> list[ComponentRecord]:
        """Full match set in ranking order, ignoring offset/limit."""
        candidates = self._candidates(q)
        needle = normalize_text(q.text).casefold() if q.text is not None else None
        out = []
        for entry in candidates:
            rec = entry.record
            if q.component_class is not None and rec.component_class is not q.component_class:
                continue
            if q.category is not None and entry.category != q.category:
                continue
            if q.color is not None and rec.color.primary is not q.color:
                continue
            if q.min_w is not None and rec.box.w < q.min_w:
                continue
            if q.max_w is not None and rec.box.w > q.max_w:
                continue
            if q.min_h is not None and rec.box.h < q.min_h:
                continue
            if q.max_h is not None and rec.box.h > q.max_h:
                continue
            if needle is not None and needle not in entry.folded_text:
                continue
            out.append(entry)
        out.sort(key=lambda e: e.rank)
        return [e.record for e in out]

    def query(self, q: QuerySpec) -> ResultPage:
        """Apply every present facet conjunctively, rank, paginate."""
        matched = self.matches(q)
        page = matched[q.offset : q.offset + q.limit]
        return ResultPage(tuple(page), len(matched), q.offset, q.limit)

    def _candidates(self, q: QuerySpec) -> Iterable[_Entry]:
        postings: list[list[_Entry]] = []
        if q.component_class is not None:
            postings.append(self._by_class.get(q.component_class, []))
        if q.category is not None:
            postings.append(self._by_category.get(q.category, []))
        if q.color is not None:
            postings.append(self._by_color.get(q.color, []))
        if postings:
            return min(postings, key=len)
        if q.min_w is not None or q.max_w is not None:
            lo = bisect.bisect_left(self._w_keys, q.min_w) if q.min_w is not None else 0
            hi = (
                bisect.bisect_right(self._w_keys, q.max_w)
                if q.max_w is not None
                else len(self._by_w)
            )
            return self._by_w[lo:hi]
        if q.min_h is not None or q.max_h is not None:
            lo = bisect.bisect_left(self._h_keys, q.min_h) if q.min_h is not None else 0
            hi = (
                bisect.bisect_right(self._h_keys, q.max_h)
                if q.max_h is not None
                else len(self._by_h)
            )
            return self._by_h[lo:hi]
        return self._order

    # -- similarity -------------------------------------------------------------

    def similar(
        self,
        component_id: str,
        k: int,
        weights: SimilarityWeights = DEFAULT_WEIGHTS,
    ) -> list[tuple[str, float]]:
        """Top-k most similar components, excluding the query component.

        Score is the weighted sum of: same app, same developer, same class,
        color-histogram overlap (1 - L1/2) and text-token Jaccard. Ties break
        by component_id ascending.
        """
        if k < 1:
            raise ValueError(f"k must be >= 1, got {k}")
        try:
            target = self._entries[component_id]
        except KeyError:
            raise UnknownComponent(component_id) from None
        scored = []
        for entry in self._order:
            if entry.record.component_id == component_id:
                continue
            scored.append((self.score_pair(target, entry, weights), entry))
        scored.sort(key=lambda item: (-item[0], item[1].record.component_id))
        return [(entry.record.component_id, score) for score, entry in scored[:k]]

    def score_pair(
        self, a: _Entry, b: _Entry, weights: SimilarityWeights = DEFAULT_WEIGHTS
    ) -> float:
        ra, rb = a.record, b.record
        score = 0.0
        if ra.app_id == rb.app_id:
            score += weights.w_app
        if a.developer == b.developer:
            score += weights.w_developer
        if ra.component_class is rb.component_class:
            score += weights.w_class
        score += weights.w_color * _histogram_overlap(
            ra.color.histogram, rb.color.histogram
        )
        score += weights.w_text * _jaccard(a.tokens, b.tokens)
        return score

    def entry(self, component_id: str) -> _Entry:
        try:
            return self._entries[component_id]
        except KeyError:
            raise UnknownComponent(component_id) from None


def build_index(
    components: Sequence[ComponentRecord], apps: Sequence[AppRecord]
) -> GalleryIndex:
    return GalleryIndex(components, apps)
