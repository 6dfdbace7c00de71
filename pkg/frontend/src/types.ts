/** Payload shapes of the gallery HTTP API. The UI never recomputes them. */

export interface Box {
  x: number;
  y: number;
  w: number;
  h: number;
}

export interface ComponentSummary {
  component_id: string;
  class: string;
  box: Box;
  color: string;
  text: string;
  thumbnail: string;
  app_name: string;
}

export interface SearchPage {
  items: ComponentSummary[];
  total: number;
  offset: number;
  limit: number;
}

export interface Demographics {
  total: number;
  class_counts: Record<string, number>;
  color_counts: Record<string, number>;
  size_points: { w: number; h: number }[];
  category_counts: Record<string, number>;
}

export interface ComponentDetail {
  component: ComponentSummary & {
    histogram: Record<string, number>;
    source: string;
    confidence: number;
  };
  screenshot: { screenshot_id: string; uri: string; width: number; height: number; kind: string };
  box: Box;
  app: {
    app_id: string;
    name: string;
    category: string;
    developer: string;
    downloads: number;
    rating: number;
  };
}

export interface SimilarItem extends ComponentSummary {
  score: number;
}

export interface ComparisonRow {
  class: string;
  cells: Record<string, ComponentSummary[] | null>;
}

export interface ComparisonTable {
  companies: string[];
  rows: ComparisonRow[];
  color_dist: Record<string, Record<string, number>>;
}

export interface NotebookEntry {
  entry_id: string;
  component_id: string;
  note: string;
  created_at: string;
}

export interface Facets {
  class?: string;
  category?: string;
  color?: string;
  text?: string;
  min_w?: number;
  max_w?: number;
  min_h?: number;
  max_h?: number;
}

/** Display tints for the 15 color buckets (pie slices, strips, swatches). */
export const COLOR_HEX: Record<string, string> = {
  red: "#e02020",
  orange: "#f08020",
  yellow: "#e8e020",
  chartreuse: "#88e020",
  green: "#20c040",
  spring_green: "#20e08c",
  cyan: "#20dcdc",
  azure: "#2080f0",
  blue: "#2828f0",
  violet: "#8c28f0",
  magenta: "#f028e0",
  rose: "#f02882",
  black: "#1a1a1a",
  white: "#f5f5f5",
  gray: "#808080",
};
