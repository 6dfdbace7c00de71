/** Gallery application: wires facets, the masonry grid with lazy loading,
 * demographics, detail, comparison and the notebook to the HTTP API. */

import { GalleryApi } from "./api";
import { renderComparison } from "./comparison";
import { renderDemographics } from "./charts";
import { renderDetail } from "./detail";
import { DEFAULT_GAP, DEFAULT_ROW_HEIGHT, gridPixelHeight, packHorizontal } from "./masonry";
import { renderNotebook } from "./notebook";
import { SearchState } from "./state";
import type { Facets } from "./types";

const PAGE_SIZE = 30;

const COMPONENT_CLASSES = [
  "button", "image_button", "check_box", "radio_button", "switch",
  "toggle_button", "progress_bar", "rating_bar", "seek_bar", "spinner",
  "chronometer",
];

const COLOR_NAMES = [
  "red", "orange", "yellow", "chartreuse", "green", "spring_green", "cyan",
  "azure", "blue", "violet", "magenta", "rose", "black", "white", "gray",
];

export class GalleryApp {
  private readonly state = new SearchState(PAGE_SIZE);
  private grid!: HTMLElement;
  private gridViewport!: HTMLElement;
  private statusLine!: HTMLElement;
  private sidePanel!: HTMLElement;

  constructor(
    private readonly api: GalleryApi,
    private readonly root: HTMLElement,
  ) {}

  mount(): void {
    this.root.innerHTML = "";
    this.root.appendChild(this.buildFacetBar());

    this.gridViewport = document.createElement("div");
    this.gridViewport.className = "grid-viewport";
    this.grid = document.createElement("div");
    this.grid.className = "masonry-grid";
    this.grid.style.position = "relative";
    this.gridViewport.appendChild(this.grid);
    this.root.appendChild(this.gridViewport);

    this.statusLine = document.createElement("p");
    this.statusLine.className = "status";
    this.root.appendChild(this.statusLine);

    this.sidePanel = document.createElement("div");
    this.sidePanel.className = "side-panel";
    this.root.appendChild(this.sidePanel);

    this.gridViewport.addEventListener("scroll", () => this.maybeFetch());
    window.addEventListener("resize", () => this.repack());

    this.refreshSearch();
    this.refreshDemographics();
    this.refreshNotebook();
  }

  private buildFacetBar(): HTMLElement {
    const bar = document.createElement("form");
    bar.className = "facet-bar";
    bar.addEventListener("submit", (event) => event.preventDefault());

    bar.appendChild(this.select("class", ["", ...COMPONENT_CLASSES]));
    bar.appendChild(this.select("color", ["", ...COLOR_NAMES]));

    const text = document.createElement("input");
    text.type = "search";
    text.placeholder = "text contains…";
    text.name = "text";
    text.addEventListener("change", () => {
      this.changeFacet("text", text.value || undefined);
    });
    bar.appendChild(text);

    const category = document.createElement("input");
    category.type = "text";
    category.placeholder = "category";
    category.name = "category";
    category.addEventListener("change", () => {
      this.changeFacet("category", category.value || undefined);
    });
    bar.appendChild(category);

    for (const name of ["min_w", "max_w", "min_h", "max_h"] as const) {
      const input = document.createElement("input");
      input.type = "number";
      input.placeholder = name;
      input.name = name;
      input.addEventListener("change", () => {
        this.changeFacet(name, input.value === "" ? undefined : Number(input.value));
      });
      bar.appendChild(input);
    }

    const compare = document.createElement("button");
    compare.textContent = "compare companies";
    compare.addEventListener("click", () => this.openComparison());
    bar.appendChild(compare);

    return bar;
  }

  private select(name: "class" | "color", values: string[]): HTMLSelectElement {
    const select = document.createElement("select");
    select.name = name;
    for (const value of values) {
      const option = document.createElement("option");
      option.value = value;
      option.textContent = value || `any ${name}`;
      select.appendChild(option);
    }
    select.addEventListener("change", () => {
      this.changeFacet(name, select.value || undefined);
    });
    return select;
  }

  private changeFacet<K extends keyof Facets>(name: K, value: Facets[K] | undefined): void {
    this.state.setFacet(name, value);
    this.grid.innerHTML = "";
    this.refreshSearch();
    this.refreshDemographics();
  }

  private refreshSearch(): void {
    const intent = this.state.scroller.initialFetch();
    if (intent) this.fetchPage(intent.offset, intent.limit);
  }

  private maybeFetch(): void {
    const intent = this.state.scroller.onScroll({
      scrollTop: this.gridViewport.scrollTop,
      viewportHeight: this.gridViewport.clientHeight,
      contentHeight: this.grid.scrollHeight,
    });
    if (intent) this.fetchPage(intent.offset, intent.limit);
  }

  private async fetchPage(offset: number, limit: number): Promise<void> {
    const generation = this.state.currentGeneration;
    try {
      const page = await this.api.search(this.state.facets, offset, limit);
      if (this.state.acceptPage(generation, offset, page.items, page.total)) {
        this.repack();
        this.statusLine.textContent = `${this.state.loadedItems.length} of ${page.total} components`;
        this.maybeFetch(); // viewport may still be short
      }
    } catch (error) {
      this.state.scroller.onError(offset);
      this.statusLine.textContent = `load failed: ${error} — scroll to retry`;
    }
  }

  private repack(): void {
    const items = this.state.loadedItems;
    if (items.length === 0) {
      this.grid.innerHTML = "";
      const empty = document.createElement("p");
      empty.className = "empty-results";
      empty.textContent = "no components match this search";
      this.grid.appendChild(empty);
      return;
    }
    const options = {
      rowHeight: DEFAULT_ROW_HEIGHT,
      gap: DEFAULT_GAP,
      containerWidth: this.gridViewport.clientWidth || 960,
    };
    const placed = packHorizontal(
      items.map((item) => ({
        id: item.component_id,
        width: item.box.w,
        height: item.box.h,
      })),
      options,
    );
    this.grid.innerHTML = "";
    this.grid.style.height = `${gridPixelHeight(placed, options)}px`;
    placed.forEach((tile, i) => {
      const item = items[i];
      const cell = document.createElement("button");
      cell.className = "tile";
      cell.style.position = "absolute";
      cell.style.left = `${tile.x}px`;
      cell.style.top = `${tile.y}px`;
      cell.style.width = `${tile.width}px`;
      cell.style.height = `${tile.height}px`;
      cell.setAttribute("data-component-id", item.component_id);
      const img = document.createElement("img");
      img.src = this.api.imageUrl(item.thumbnail);
      img.alt = `${item.class} ${item.text}`.trim();
      img.style.width = "100%";
      img.style.height = "100%";
      cell.appendChild(img);
      cell.addEventListener("click", () => this.openDetail(item.component_id));
      this.grid.appendChild(cell);
    });
  }

  private async refreshDemographics(): Promise<void> {
    const generation = this.state.currentGeneration;
    const data = await this.api.demographics(this.state.facets);
    if (generation !== this.state.currentGeneration) return; // stale
    const existing = this.sidePanel.querySelector(".demographics");
    const panel = renderDemographics(data);
    if (existing) existing.replaceWith(panel);
    else this.sidePanel.prepend(panel);
  }

  private async openDetail(componentId: string): Promise<void> {
    this.state.selectedComponent = componentId;
    const [detail, similar] = await Promise.all([
      this.api.componentDetail(componentId),
      this.api.similar(componentId, 8),
    ]);
    const view = renderDetail(detail, similar.items, {
      onNavigate: (id) => this.openDetail(id),
      onSaveToNotebook: async (id) => {
        await this.api.addToNotebook(id, "");
        this.refreshNotebook();
      },
      imageUrl: (path) => this.api.imageUrl(path),
    });
    this.swapOverlay(view);
  }

  private async openComparison(): Promise<void> {
    const { companies } = await this.api.companies();
    this.state.selectedCompanies = companies.slice(0, 2);
    if (this.state.selectedCompanies.length === 0) return;
    const table = await this.api.compare(this.state.selectedCompanies);
    this.swapOverlay(renderComparison(table, (path) => this.api.imageUrl(path)));
  }

  private async refreshNotebook(): Promise<void> {
    const { entries } = await this.api.notebook();
    const panel = renderNotebook(entries, {
      onOpen: (id) => this.openDetail(id),
      onRemove: async (entryId) => {
        await this.api.removeFromNotebook(entryId);
        this.refreshNotebook();
      },
    });
    const existing = this.sidePanel.querySelector(".notebook");
    if (existing) existing.replaceWith(panel);
    else this.sidePanel.appendChild(panel);
  }

  private swapOverlay(view: HTMLElement): void {
    document.querySelector(".overlay")?.remove();
    const overlay = document.createElement("div");
    overlay.className = "overlay";
    const close = document.createElement("button");
    close.className = "close";
    close.textContent = "×";
    close.addEventListener("click", () => overlay.remove());
    overlay.append(close, view);
    this.root.appendChild(overlay);
  }
}

export function bootstrap(): void {
  const base =
    (window as unknown as { GALLERY_API_BASE?: string }).GALLERY_API_BASE ??
    "http://127.0.0.1:8000";
  const root = document.getElementById("app");
  if (!root) throw new Error("missing #app element");
  new GalleryApp(new GalleryApi(base), root).mount();
}
