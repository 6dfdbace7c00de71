/** Side-by-side company comparison: 11 class rows x N company columns,
 * a literal "None" where a company has no components of a class, and a
 * color-distribution strip per company. */

import type { ComparisonTable } from "./types";
import { COLOR_HEX } from "./types";

export function renderComparison(
  table: ComparisonTable,
  imageUrl: (path: string) => string,
): HTMLElement {
  const view = document.createElement("div");
  view.className = "comparison";

  const grid = document.createElement("table");
  grid.className = "comparison-table";

  const head = document.createElement("tr");
  head.appendChild(document.createElement("th"));
  for (const company of table.companies) {
    const th = document.createElement("th");
    const name = document.createElement("div");
    name.textContent = company;
    th.appendChild(name);
    th.appendChild(colorStrip(table.color_dist[company] ?? {}));
    head.appendChild(th);
  }
  grid.appendChild(head);

  for (const row of table.rows) {
    const tr = document.createElement("tr");
    const label = document.createElement("th");
    label.textContent = row.class;
    tr.appendChild(label);
    for (const company of table.companies) {
      const td = document.createElement("td");
      td.setAttribute("data-class", row.class);
      td.setAttribute("data-company", company);
      const cell = row.cells[company];
      if (cell === null || cell === undefined) {
        td.textContent = "None";
        td.className = "none-cell";
      } else {
        for (const item of cell) {
          const thumb = document.createElement("img");
          thumb.src = imageUrl(item.thumbnail);
          thumb.alt = item.component_id;
          thumb.title = `${item.app_name}: ${item.text || item.class}`;
          thumb.setAttribute("data-component-id", item.component_id);
          td.appendChild(thumb);
        }
      }
      tr.appendChild(td);
    }
    grid.appendChild(tr);
  }
  view.appendChild(grid);
  return view;
}

function colorStrip(dist: Record<string, number>): HTMLElement {
  const strip = document.createElement("div");
  strip.className = "color-strip";
  strip.style.display = "flex";
  strip.style.height = "10px";
  for (const [name, fraction] of Object.entries(dist)) {
    const segment = document.createElement("span");
    segment.style.background = COLOR_HEX[name] ?? "#ccc";
    segment.style.flexGrow = String(fraction);
    segment.title = `${name}: ${(fraction * 100).toFixed(1)}%`;
    segment.setAttribute("data-color", name);
    strip.appendChild(segment);
  }
  return strip;
}
