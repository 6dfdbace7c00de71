/** Thin typed client for the gallery API; one base-URL setting. */

import type {
  ComparisonTable,
  ComponentDetail,
  Demographics,
  Facets,
  NotebookEntry,
  SearchPage,
  SimilarItem,
} from "./types";

export class GalleryApi {
  constructor(private baseUrl: string = "") {}

  private async get<T>(path: string, params?: Record<string, string | number>): Promise<T> {
    const url = new URL(this.baseUrl + path, window.location.href);
    for (const [key, value] of Object.entries(params ?? {})) {
      url.searchParams.set(key, String(value));
    }
    const response = await fetch(url.toString());
    if (!response.ok) {
      throw new Error(`${path}: HTTP ${response.status}`);
    }
    return response.json() as Promise<T>;
  }

  private facetParams(facets: Facets): Record<string, string | number> {
    const params: Record<string, string | number> = {};
    for (const [key, value] of Object.entries(facets)) {
      if (value !== undefined && value !== "") params[key] = value;
    }
    return params;
  }

  search(facets: Facets, offset: number, limit: number): Promise<SearchPage> {
    return this.get("/search", { ...this.facetParams(facets), offset, limit });
  }

  demographics(facets: Facets): Promise<Demographics> {
    return this.get("/demographics", this.facetParams(facets));
  }

  componentDetail(componentId: string): Promise<ComponentDetail> {
    return this.get(`/component/${encodeURIComponent(componentId)}`);
  }

  similar(componentId: string, k: number): Promise<{ items: SimilarItem[] }> {
    return this.get(`/component/${encodeURIComponent(componentId)}/similar`, { k });
  }

  companies(): Promise<{ companies: string[] }> {
    return this.get("/companies");
  }

  compare(companies: string[]): Promise<ComparisonTable> {
    return this.get("/compare", { companies: companies.join(",") });
  }

  notebook(): Promise<{ entries: NotebookEntry[] }> {
    return this.get("/notebook");
  }

  async addToNotebook(componentId: string, note: string): Promise<NotebookEntry> {
    const response = await fetch(this.baseUrl + "/notebook", {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify({ component_id: componentId, note }),
    });
    if (!response.ok) throw new Error(`POST /notebook: HTTP ${response.status}`);
    return response.json();
  }

  async removeFromNotebook(entryId: string): Promise<void> {
    const response = await fetch(
      this.baseUrl + `/notebook/${encodeURIComponent(entryId)}`,
      { method: "DELETE" },
    );
    if (!response.ok) throw new Error(`DELETE /notebook: HTTP ${response.status}`);
  }

  imageUrl(path: string): string {
    return this.baseUrl + path;
  }
}
