/** Canvas rendering of the gridworld: heatmap underlay, terrain icons,
 * agent marker, and start flag. One drawn cell per grid cell. */

import { heatmapForGrid } from "./heatmap.js";
import { GridDoc, Snapshot } from "./types.js";

export interface GridViewCallbacks {
  onCellClick: (x: number, y: number) => void;
}

export class GridView {
  private readonly ctx: CanvasRenderingContext2D;
  private grid: GridDoc | null = null;
  private snapshot: Snapshot | null = null;
  private cellPx = 48;

  constructor(private readonly canvas: HTMLCanvasElement, callbacks: GridViewCallbacks) {
    const ctx = canvas.getContext("2d");
    if (!ctx) throw new Error("no 2d context");
    this.ctx = ctx;
    canvas.addEventListener("click", (ev) => {
      if (!this.grid) return;
      const rect = canvas.getBoundingClientRect();
      const x = Math.floor(((ev.clientX - rect.left) / rect.width) * this.grid.width);
      const y = Math.floor(((ev.clientY - rect.top) / rect.height) * this.grid.height);
      callbacks.onCellClick(x, y);
    });
  }

  update(grid: GridDoc, snapshot: Snapshot | null): void {
    this.grid = grid;
    this.snapshot = snapshot;
    this.render();
  }

  private render(): void {
    const grid = this.grid;
    if (!grid) return;
    this.cellPx = Math.max(20, Math.min(56, Math.floor(480 / Math.max(grid.width, grid.height))));
    const w = grid.width * this.cellPx;
    const h = grid.height * this.cellPx;
    if (this.canvas.width !== w) this.canvas.width = w;
    if (this.canvas.height !== h) this.canvas.height = h;

    // a snapshot from a differently-shaped grid is stale: no heat underlay
    const colors = this.snapshot
      ? heatmapForGrid(grid.width * grid.height, this.snapshot.max_q)
      : null;
    const stale = this.snapshot !== null && colors === null;
    const ctx = this.ctx;
    ctx.clearRect(0, 0, w, h);
    const px = this.cellPx;
    ctx.font = `${Math.floor(px * 0.62)}px serif`;
    ctx.textAlign = "center";
    ctx.textBaseline = "middle";

    for (let y = 0; y < grid.height; y++) {
      for (let x = 0; x < grid.width; x++) {
        const cell = grid.cells[y][x];
        const idx = y * grid.width + x;
        const cx = x * px;
        const cy = y * px;
        if (cell === "R") {
          ctx.fillStyle = "#4a4a55";
        } else if (cell === "L") {
          ctx.fillStyle = "#d14b1f";
        } else if (cell === "G") {
          ctx.fillStyle = "#2e7d32";
        } else {
          ctx.fillStyle = colors ? colors[idx] : "#e8f5e4";
        }
        ctx.fillRect(cx, cy, px, px);
        if (cell === "R") this.glyph("\u{1FAA8}", cx, cy); // rock
        if (cell === "L") this.glyph("\u{1F30B}", cx, cy); // volcano
        if (cell === "G") this.glyph("\u{1F356}", cx, cy); // meat
      }
    }

    ctx.strokeStyle = "rgba(30,40,30,0.25)";
    ctx.lineWidth = 1;
    for (let x = 0; x <= grid.width; x++) {
      ctx.beginPath();
      ctx.moveTo(x * px + 0.5, 0);
      ctx.lineTo(x * px + 0.5, h);
      ctx.stroke();
    }
    for (let y = 0; y <= grid.height; y++) {
      ctx.beginPath();
      ctx.moveTo(0, y * px + 0.5);
      ctx.lineTo(w, y * px + 0.5);
      ctx.stroke();
    }

    const [sx, sy] = grid.start;
    ctx.strokeStyle = "#1565c0";
    ctx.lineWidth = 2;
    ctx.strokeRect(sx * px + 2, sy * px + 2, px - 4, px - 4);

    const agent = this.snapshot && !stale ? this.snapshot.agent_pos : grid.start;
    this.glyph("\u{1F996}", agent[0] * px, agent[1] * px); // dinosaur

    if (stale) {
      ctx.fillStyle = "rgba(20,20,28,0.8)";
      ctx.fillRect(4, 4, 86, 20);
      ctx.fillStyle = "#ff8a65";
      ctx.font = "11px sans-serif";
      ctx.textAlign = "left";
      ctx.fillText("stale data", 10, 17);
    }
  }

  private glyph(ch: string, cx: number, cy: number): void {
    this.ctx.fillText(ch, cx + this.cellPx / 2, cy + this.cellPx / 2 + 1);
  }
}
