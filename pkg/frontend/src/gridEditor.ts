/** Grid editor state: brush application, edit gating, optimistic revert.
 *
 * All logic is DOM-free; the canvas view and server round trips live in
 * app.ts. While the session runs, edits are locked and applyBrush emits
 * nothing, so no request can even be constructed.
 */

import { GridEdit } from "./api.js";
import { GridDoc } from "./types.js";

export type Brush = "empty" | "rock" | "lava" | "goal" | "start";

export const BRUSH_CELL: Record<Brush, string> = {
  empty: ".",
  rock: "R",
  lava: "L",
  goal: "G",
  start: "S",
};

export function cloneGrid(grid: GridDoc): GridDoc {
  return {
    width: grid.width,
    height: grid.height,
    start: [grid.start[0], grid.start[1]],
    cells: [...grid.cells],
  };
}

export function cellAt(grid: GridDoc, x: number, y: number): string {
  return grid.cells[y][x];
}

function withCell(rows: string[], x: number, y: number, ch: string): string[] {
  const out = [...rows];
  out[y] = out[y].slice(0, x) + ch + out[y].slice(x + 1);
  return out;
}

export class GridEditorState {
  grid: GridDoc;
  brush: Brush = "rock";
  locked = false;
  dirty = false;

  constructor(grid: GridDoc) {
    this.grid = cloneGrid(grid);
  }

  setLocked(locked: boolean): void {
    this.locked = locked;
  }

  setGrid(grid: GridDoc): void {
    this.grid = cloneGrid(grid);
    this.dirty = false;
  }

  /**
   * Apply the current brush at (x, y) optimistically.
   * Returns the edit to send to the server, or null when the editor is
   * locked, the click is out of bounds, or the brush changes nothing.
   */
  applyBrush(x: number, y: number): GridEdit | null {
    if (this.locked) return null;
    if (x < 0 || y < 0 || x >= this.grid.width || y >= this.grid.height) return null;
    if (this.brush === "start") {
      const [sx, sy] = this.grid.start;
      if (sx === x && sy === y && cellAt(this.grid, x, y) === ".") return null;
      this.grid = {
        ...this.grid,
        start: [x, y],
        cells: withCell(this.grid.cells, x, y, "."),
      };
      this.dirty = true;
      return { x, y, cell: "S" };
    }
    const ch = BRUSH_CELL[this.brush];
    if (cellAt(this.grid, x, y) === ch) return null;
    this.grid = { ...this.grid, cells: withCell(this.grid.cells, x, y, ch) };
    this.dirty = true;
    return { x, y, cell: ch };
  }

  /** Roll the local copy back to a pre-edit snapshot (server rejected). */
  revert(previous: GridDoc): void {
    this.grid = cloneGrid(previous);
  }

  snapshotGrid(): GridDoc {
    return cloneGrid(this.grid);
  }
}
