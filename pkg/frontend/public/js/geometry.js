/** World/canvas coordinate mapping.
 *
 * World units have their origin at the lower-left corner with y growing
 * upward; the canvas origin is top-left with y growing downward. Every
 * transform lives here so the flip happens in exactly one place.
 */
export function scale(view) {
    return view.pixels / view.worldSize;
}
export function worldToCanvas(view, x, y) {
    const s = scale(view);
    return [x * s, (view.worldSize - y) * s];
}
export function canvasToWorld(view, px, py) {
    const s = scale(view);
    return [px / s, view.worldSize - py / s];
}
/** Canvas rect for a cell-anchored footprint (anchor = lower-left cell). */
export function footprintRect(view, anchor, footprint, cellUnits) {
    const [c, r] = anchor;
    const [w, h] = footprint;
    const [px, py] = worldToCanvas(view, c * cellUnits, (r + h) * cellUnits);
    const s = scale(view);
    return [px, py, w * cellUnits * s, h * cellUnits * s];
}
export function clamp(value, lo, hi) {
    return Math.min(Math.max(value, lo), hi);
}
/** Chess-style cell name back to 0-based column / row numbers. */
export function cellToAnchor(cell) {
    const col = cell.charCodeAt(0) - "A".charCodeAt(0);
    const row = parseInt(cell.slice(2), 10) - 1;
    return [col, row];
}
export function anchorToCell(col, row) {
    const letter = String.fromCharCode("A".charCodeAt(0) + col);
    return `${letter}-${String(row + 1).padStart(2, "0")}`;
}
