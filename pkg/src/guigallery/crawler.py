"""Breadth-first crawl over an injectable page fetcher.

The BFS core is pure: politeness, rate limits and actual HTTP live in the
Fetcher implementation. Feeding one crawl's output URLs back in as the next
call's seeds gives multi-stage crawling.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Optional, Protocol, Sequence

from guigallery.model import AppRecord


@dataclass(frozen=True)
class AppPagePayload:
    """What an app-store page contributes: metadata plus intro image URLs."""

    app: AppRecord
    intro_images: tuple[str, ...] = ()


@dataclass(frozen=True)
class CrawlPage:
    url: str
    links: tuple[str, ...] = ()
    payload: Optional[AppPagePayload] = None

    def __post_init__(self) -> None:
        if not self.url:
            raise ValueError("empty page url")
        deduped = tuple(dict.fromkeys(self.links))
        if deduped != tuple(self.links):
            object.__setattr__(self, "links", deduped)


class FetchError(Exception):
    """A page could not be retrieved."""


class Fetcher(Protocol):
    def fetch(self, url: str) -> CrawlPage: ...


@dataclass
class CrawlResult:
    pages: list[CrawlPage] = field(default_factory=list)
    failures: list[tuple[str, str]] = field(default_factory=list)  # (url, reason)

    @property
    def urls(self) -> list[str]:
        return [page.url for page in self.pages]


def crawl_bfs(
    seeds: Sequence[str], fetcher: Fetcher, max_pages: int
) -> CrawlResult:
    """Visit pages in strict breadth-first order.

    All depth-d URLs are fetched before any depth-(d+1) URL and seed/link
    order is preserved within a depth. Each URL (exact string match) is
    fetched at most once; the crawl stops after max_pages successful fetches.
    Fetch failures are skipped and reported in the result.
    """
    if not seeds:
        raise ValueError("no seed urls")
    if max_pages < 1:
        raise ValueError(f"max_pages must be >= 1, got {max_pages}")

    result = CrawlResult()
    queue: deque[str] = deque()
    enqueued: set[str] = set()
    for url in seeds:
        if url not in enqueued:
            queue.append(url)
            enqueued.add(url)

    while queue and len(result.pages) < max_pages:
        url = queue.popleft()
        try:
            page = fetcher.fetch(url)
        except FetchError as exc:
            result.failures.append((url, str(exc)))
            continue
        result.pages.append(page)
        for link in page.links:
            if link not in enqueued:
                queue.append(link)
                enqueued.add(link)

    return result
