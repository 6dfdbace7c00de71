/** Horizontal masonry: fixed-height rows, variable tile widths.
 *
 * Components are mostly flat and wide, so rows (not columns) optimize the
 * space. Tiles keep their aspect ratio at the target row height and wrap to
 * the next row when the running width would overflow; item order is always
 * preserved, so a repack on resize never reorders.
 */

export interface TileInput {
  id: string;
  width: number; // natural pixel size of the crop
  height: number;
}

export interface PlacedTile {
  id: string;
  x: number;
  y: number;
  width: number;
  height: number;
  row: number;
}

export interface MasonryOptions {
  rowHeight: number;
  gap: number;
  containerWidth: number;
}

export const DEFAULT_ROW_HEIGHT = 96;
export const DEFAULT_GAP = 8;

export function packHorizontal(
  items: TileInput[],
  options: MasonryOptions,
): PlacedTile[] {
  const { rowHeight, gap, containerWidth } = options;
  const placed: PlacedTile[] = [];
  let x = 0;
  let row = 0;
  for (const item of items) {
    const aspect = item.width / item.height;
    // Very wide tiles still fit one per row, clamped to the container.
    const tileWidth = Math.min(
      Math.max(1, Math.round(aspect * rowHeight)),
      containerWidth,
    );
    if (x > 0 && x + tileWidth > containerWidth) {
      row += 1;
      x = 0;
    }
    placed.push({
      id: item.id,
      x,
      y: row * (rowHeight + gap),
      width: tileWidth,
      height: rowHeight,
      row,
    });
    x += tileWidth + gap;
  }
  return placed;
}

export function gridPixelHeight(placed: PlacedTile[], options: MasonryOptions): number {
  if (placed.length === 0) return 0;
  const rows = placed[placed.length - 1].row + 1;
  return rows * options.rowHeight + (rows - 1) * options.gap;
}
