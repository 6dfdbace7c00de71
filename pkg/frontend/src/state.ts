/** View state: active facets, the loaded prefix of results, selections.
 *
 * Loaded items are always a prefix of the server ranking for the current
 * facets. Any facet change bumps a generation counter and clears the grid,
 * so responses from a previous query can never leak into the display.
 */

import type { ComponentSummary, Facets } from "./types";
import { InfiniteScroller } from "./scroll";

export class SearchState {
  readonly scroller: InfiniteScroller;
  private facetState: Facets = {};
  private generation = 0;
  private items: ComponentSummary[] = [];
  selectedComponent: string | null = null;
  selectedCompanies: string[] = [];

  constructor(pageSize: number) {
    this.scroller = new InfiniteScroller(pageSize);
  }

  get facets(): Facets {
    return { ...this.facetState };
  }

  get loadedItems(): readonly ComponentSummary[] {
    return this.items;
  }

  get currentGeneration(): number {
    return this.generation;
  }

  /** Change one facet; resets pagination and invalidates in-flight pages. */
  setFacet<K extends keyof Facets>(name: K, value: Facets[K] | undefined): number {
    if (value === undefined || value === ("" as unknown)) {
      delete this.facetState[name];
    } else {
      this.facetState[name] = value;
    }
    this.generation += 1;
    this.items = [];
    this.scroller.reset();
    return this.generation;
  }

  /** Append a page if it belongs to the current generation; else drop it. */
  acceptPage(
    generation: number,
    offset: number,
    pageItems: ComponentSummary[],
    total: number,
  ): boolean {
    if (generation !== this.generation) return false; // stale response
    this.scroller.onPage(offset, pageItems.length, total);
    if (offset === this.items.length) {
      this.items = this.items.concat(pageItems);
    }
    return true;
  }
}
