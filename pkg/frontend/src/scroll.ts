/** Lazy loading for the search grid.
 *
 * Listens to scroll/resize style events (the caller feeds in measurements)
 * and decides when the next page should load: when the space left below the
 * viewport is less than one viewport height. Guarantees at most one request
 * in flight, never the same offset twice and never a skipped offset.
 */

export interface ScrollMetrics {
  scrollTop: number;
  viewportHeight: number;
  contentHeight: number;
}

export interface FetchIntent {
  offset: number;
  limit: number;
}

export class InfiniteScroller {
  private loaded = 0;
  private total: number | null = null;
  private inFlight: number | null = null;
  private issued = new Set<number>();

  constructor(private pageSize: number) {}

  /** Forget everything (a facet change resets pagination to offset 0). */
  reset(): void {
    this.loaded = 0;
    this.total = null;
    this.inFlight = null;
    this.issued.clear();
  }

  get loadedCount(): number {
    return this.loaded;
  }

  get knownTotal(): number | null {
    return this.total;
  }

  get hasMore(): boolean {
    return this.total === null || this.loaded < this.total;
  }

  /** The first page is requested unconditionally (offset 0). */
  initialFetch(): FetchIntent | null {
    return this.request(0);
  }

  /** Maybe request the next page for the current scroll position. */
  onScroll(metrics: ScrollMetrics): FetchIntent | null {
    if (!this.hasMore) return null;
    const remaining = metrics.contentHeight - metrics.scrollTop - metrics.viewportHeight;
    if (remaining >= metrics.viewportHeight) return null;
    return this.request(this.loaded);
  }

  private request(offset: number): FetchIntent | null {
    if (this.inFlight !== null) return null; // single in-flight request
    if (this.issued.has(offset)) return null; // never re-request an offset
    this.inFlight = offset;
    this.issued.add(offset);
    return { offset, limit: this.pageSize };
  }

  /** Record a completed page. */
  onPage(offset: number, itemCount: number, total: number): void {
    if (this.inFlight === offset) this.inFlight = null;
    this.total = total;
    if (offset === this.loaded) this.loaded += itemCount;
  }

  /** A failed fetch frees the slot and allows a retry of the same offset. */
  onError(offset: number): void {
    if (this.inFlight === offset) this.inFlight = null;
    this.issued.delete(offset);
  }
}
