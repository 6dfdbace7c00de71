/** Component detail: the whole screenshot with the component highlighted by
 * a red rectangle at the payload's box, app metadata and similar components. */

import type { ComponentDetail, SimilarItem } from "./types";

export interface DetailCallbacks {
  onNavigate: (componentId: string) => void;
  onSaveToNotebook: (componentId: string) => void;
  imageUrl: (path: string) => string;
}

export function renderDetail(
  detail: ComponentDetail,
  similar: SimilarItem[],
  callbacks: DetailCallbacks,
): HTMLElement {
  const view = document.createElement("div");
  view.className = "detail";

  // Screenshot pane: natural pixel geometry, red highlight at the box.
  const pane = document.createElement("div");
  pane.className = "screenshot-pane";
  pane.style.position = "relative";
  pane.style.width = `${detail.screenshot.width}px`;
  pane.style.height = `${detail.screenshot.height}px`;

  const img = document.createElement("img");
  img.src = callbacks.imageUrl(detail.screenshot.uri);
  img.width = detail.screenshot.width;
  img.height = detail.screenshot.height;
  img.alt = `screenshot ${detail.screenshot.screenshot_id}`;
  pane.appendChild(img);

  const highlight = document.createElement("div");
  highlight.className = "component-highlight";
  highlight.style.position = "absolute";
  highlight.style.left = `${detail.box.x}px`;
  highlight.style.top = `${detail.box.y}px`;
  highlight.style.width = `${detail.box.w}px`;
  highlight.style.height = `${detail.box.h}px`;
  highlight.style.border = "2px solid red";
  highlight.style.pointerEvents = "none";
  pane.appendChild(highlight);
  view.appendChild(pane);

  const meta = document.createElement("dl");
  meta.className = "metadata";
  const rows: [string, string][] = [
    ["class", detail.component.class],
    ["text", detail.component.text || "—"],
    ["primary color", detail.component.color],
    ["size", `${detail.box.w} × ${detail.box.h}`],
    ["source", `${detail.component.source} (${detail.component.confidence})`],
    ["app", detail.app.name],
    ["package", detail.app.app_id],
    ["developer", detail.app.developer],
    ["category", detail.app.category],
    ["downloads", String(detail.app.downloads)],
    ["rating", String(detail.app.rating)],
  ];
  for (const [term, value] of rows) {
    const dt = document.createElement("dt");
    dt.textContent = term;
    const dd = document.createElement("dd");
    dd.textContent = value;
    meta.append(dt, dd);
  }
  view.appendChild(meta);

  const save = document.createElement("button");
  save.className = "share-button";
  save.textContent = "Share";
  save.addEventListener("click", () =>
    callbacks.onSaveToNotebook(detail.component.component_id),
  );
  view.appendChild(save);

  const strip = document.createElement("div");
  strip.className = "similar-strip";
  const heading = document.createElement("h3");
  heading.textContent = "similar components";
  strip.appendChild(heading);
  for (const item of similar) {
    const tile = document.createElement("button");
    tile.className = "similar-tile";
    tile.setAttribute("data-component-id", item.component_id);
    const thumb = document.createElement("img");
    thumb.src = callbacks.imageUrl(item.thumbnail);
    thumb.alt = item.component_id;
    const score = document.createElement("span");
    score.textContent = item.score.toFixed(2);
    tile.append(thumb, score);
    tile.addEventListener("click", () => callbacks.onNavigate(item.component_id));
    strip.appendChild(tile);
  }
  view.appendChild(strip);

  return view;
}
