/** World/canvas coordinate mapping.
 *
 * World units have their origin at the lower-left corner with y growing
 * upward; the canvas origin is top-left with y growing downward. Every
 * transform lives here so the flip happens in exactly one place.
 */

export interface Viewport {
  worldSize: number;   // world units per side
  pixels: number;      // canvas pixels per side (square canvas)
}

export function scale(view: Viewport): number {
  return view.pixels / view.worldSize;
}

export function worldToCanvas(view: Viewport, x: number, y: number): [number, number] {
  const s = scale(view);
  return [x * s, (view.worldSize - y) * s];
}

export function canvasToWorld(view: Viewport, px: number, py: number): [number, number] {
  const s = scale(view);
  return [px / s, view.worldSize - py / s];
}

/** Canvas rect for a cell-anchored footprint (anchor = lower-left cell). */
export function footprintRect(view: Viewport, anchor: [number, number],
                              footprint: [number, number],
                              cellUnits: number): [number, number, number, number] {
  const [c, r] = anchor;
  const [w, h] = footprint;
  const [px, py] = worldToCanvas(view, c * cellUnits, (r + h) * cellUnits);
  const s = scale(view);
  return [px, py, w * cellUnits * s, h * cellUnits * s];
}

export function clamp(value: number, lo: number, hi: number): number {
  return Math.min(Math.max(value, lo), hi);
}

/** Chess-style cell name back to 0-based column / row numbers. */
export function cellToAnchor(cell: string): [number, number] {
  const col = cell.charCodeAt(0) - "A".charCodeAt(0);
  const row = parseInt(cell.slice(2), 10) - 1;
  return [col, row];
}

export function anchorToCell(col: number, row: number): string {
  const letter = String.fromCharCode("A".charCodeAt(0) + col);
  return `${letter}-${String(row + 1).padStart(2, "0")}`;
}
