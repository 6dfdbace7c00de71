/** Demographics charts: two pies, a scatter and a bar chart, rendered as
 * inline SVG. Every displayed number comes straight from the payload. */

import type { Demographics } from "./types";
import { COLOR_HEX } from "./types";

const SVG_NS = "http://www.w3.org/2000/svg";

const FALLBACK_PALETTE = [
  "#4e79a7", "#f28e2b", "#e15759", "#76b7b2", "#59a14f", "#edc948",
  "#b07aa1", "#ff9da7", "#9c755f", "#bab0ac", "#86bcb6",
];

function svgElement<K extends string>(tag: K): SVGElement {
  return document.createElementNS(SVG_NS, tag) as SVGElement;
}

function placeholder(label: string): HTMLElement {
  const div = document.createElement("div");
  div.className = "chart-placeholder";
  div.textContent = `no data — ${label}`;
  return div;
}

function chartBox(title: string, total: number | null): HTMLElement {
  const wrap = document.createElement("figure");
  wrap.className = "chart";
  const caption = document.createElement("figcaption");
  caption.textContent = total === null ? title : `${title} (${total})`;
  wrap.appendChild(caption);
  return wrap;
}

export function renderPie(
  title: string,
  counts: Record<string, number>,
  tintByColorName: boolean,
): HTMLElement {
  const total = Object.values(counts).reduce((a, b) => a + b, 0);
  const wrap = chartBox(title, total);
  if (total === 0) {
    wrap.appendChild(placeholder(title));
    return wrap;
  }
  const svg = svgElement("svg");
  svg.setAttribute("viewBox", "-1.1 -1.1 2.2 2.2");
  svg.setAttribute("class", "pie");
  let angle = -Math.PI / 2;
  Object.entries(counts).forEach(([label, count], i) => {
    const span = (count / total) * 2 * Math.PI;
    const x1 = Math.cos(angle), y1 = Math.sin(angle);
    const x2 = Math.cos(angle + span), y2 = Math.sin(angle + span);
    const large = span > Math.PI ? 1 : 0;
    const path = svgElement("path");
    const d =
      count === total
        ? "M 1 0 A 1 1 0 1 1 -1 0 A 1 1 0 1 1 1 0" // full circle
        : `M 0 0 L ${x1} ${y1} A 1 1 0 ${large} 1 ${x2} ${y2} Z`;
    path.setAttribute("d", d);
    path.setAttribute(
      "fill",
      tintByColorName
        ? COLOR_HEX[label] ?? "#ccc"
        : FALLBACK_PALETTE[i % FALLBACK_PALETTE.length],
    );
    path.setAttribute("data-label", label);
    path.setAttribute("data-count", String(count));
    const tooltip = svgElement("title");
    tooltip.textContent = `${label}: ${count}`;
    path.appendChild(tooltip);
    svg.appendChild(path);
    angle += span;
  });
  wrap.appendChild(svg);
  const legend = document.createElement("ul");
  legend.className = "legend";
  Object.entries(counts).forEach(([label, count]) => {
    const li = document.createElement("li");
    li.textContent = `${label}: ${count}`;
    legend.appendChild(li);
  });
  wrap.appendChild(legend);
  return wrap;
}

export function renderScatter(points: { w: number; h: number }[]): HTMLElement {
  const wrap = chartBox("width × height", points.length);
  if (points.length === 0) {
    wrap.appendChild(placeholder("width × height"));
    return wrap;
  }
  const maxW = Math.max(...points.map((p) => p.w));
  const maxH = Math.max(...points.map((p) => p.h));
  const svg = svgElement("svg");
  svg.setAttribute("viewBox", "0 0 220 220");
  svg.setAttribute("class", "scatter");
  for (const point of points) {
    const dot = svgElement("circle");
    dot.setAttribute("cx", String(10 + (point.w / maxW) * 200));
    dot.setAttribute("cy", String(210 - (point.h / maxH) * 200));
    dot.setAttribute("r", "2");
    dot.setAttribute("data-w", String(point.w));
    dot.setAttribute("data-h", String(point.h));
    svg.appendChild(dot);
  }
  wrap.appendChild(svg);
  return wrap;
}

export function renderBars(title: string, counts: Record<string, number>): HTMLElement {
  const total = Object.values(counts).reduce((a, b) => a + b, 0);
  const wrap = chartBox(title, total);
  if (total === 0) {
    wrap.appendChild(placeholder(title));
    return wrap;
  }
  const max = Math.max(...Object.values(counts));
  const list = document.createElement("div");
  list.className = "bars";
  for (const [label, count] of Object.entries(counts)) {
    const row = document.createElement("div");
    row.className = "bar-row";
    const name = document.createElement("span");
    name.textContent = label;
    const bar = document.createElement("div");
    bar.className = "bar";
    bar.style.width = `${(count / max) * 100}%`;
    bar.setAttribute("data-count", String(count));
    const value = document.createElement("span");
    value.textContent = String(count);
    row.append(name, bar, value);
    list.appendChild(row);
  }
  wrap.appendChild(list);
  return wrap;
}

/** The four demographics charts; totals equal the payload sums. */
export function renderDemographics(data: Demographics): HTMLElement {
  const panel = document.createElement("div");
  panel.className = "demographics";
  panel.appendChild(renderPie("component types", data.class_counts, false));
  panel.appendChild(renderPie("primary colors", data.color_counts, true));
  panel.appendChild(renderScatter(data.size_points));
  panel.appendChild(renderBars("app categories", data.category_counts));
  return panel;
}
