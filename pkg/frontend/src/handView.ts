/** Transparent five-finger hand with per-event highlights and a timeline. */

import { FINGERS, activeHighlights } from "./hand.js";
import { HapticScriptDoc } from "./types.js";

// finger layout as (x center, base y, length) fractions of the canvas
const LAYOUT: Record<string, [number, number, number]> = {
  thumb: [0.16, 0.62, 0.28],
  index: [0.34, 0.46, 0.4],
  middle: [0.5, 0.42, 0.46],
  ring: [0.66, 0.46, 0.4],
  little: [0.8, 0.52, 0.3],
};

const KIND_COLORS: Record<string, string> = {
  beat: "#64b5f6",
  note: "#ffd54f",
  accent: "#ef5350",
};

export class HandView {
  private readonly ctx: CanvasRenderingContext2D;
  private script: HapticScriptDoc | null = null;
  private playing = false;
  private startedAt = 0;
  private clock = 0;

  constructor(
    private readonly canvas: HTMLCanvasElement,
    private readonly onTime?: (t: number, playing: boolean) => void,
  ) {
    const ctx = canvas.getContext("2d");
    if (!ctx) throw new Error("no 2d context");
    this.ctx = ctx;
    this.render();
  }

  setScript(script: HapticScriptDoc | null): void {
    this.script = script;
    this.stop();
  }

  play(): void {
    if (!this.script || this.playing) return;
    this.playing = true;
    this.startedAt = performance.now() - this.clock * 1000;
    requestAnimationFrame(() => this.tick());
  }

  stop(): void {
    this.playing = false;
    this.clock = 0;
    this.render();
    this.onTime?.(0, false);
  }

  private tick(): void {
    if (!this.playing || !this.script) return;
    this.clock = (performance.now() - this.startedAt) / 1000;
    if (this.clock >= this.script.duration) {
      this.stop();
      return;
    }
    this.render();
    this.onTime?.(this.clock, true);
    requestAnimationFrame(() => this.tick());
  }

  render(): void {
    const { ctx, canvas } = this;
    const w = canvas.width;
    const h = canvas.height;
    ctx.clearRect(0, 0, w, h);

    // palm
    ctx.fillStyle = "rgba(140,160,190,0.18)";
    ctx.strokeStyle = "rgba(160,180,210,0.8)";
    ctx.lineWidth = 2;
    ctx.beginPath();
    ctx.ellipse(w * 0.5, h * 0.74, w * 0.26, h * 0.2, 0, 0, Math.PI * 2);
    ctx.fill();
    ctx.stroke();

    const highlights = this.script
      ? activeHighlights(this.script.events, this.clock)
      : new Map();
    for (const finger of FINGERS) {
      const [fx, baseY, len] = LAYOUT[finger];
      const x = fx * w;
      const top = (baseY - len) * h;
      const fw = w * 0.09;
      ctx.fillStyle = "rgba(140,160,190,0.18)";
      ctx.strokeStyle = "rgba(160,180,210,0.8)";
      this.roundRect(x - fw / 2, top, fw, len * h + h * 0.12, fw / 2);
      ctx.fill();
      ctx.stroke();
      const opacity = highlights.get(finger);
      if (opacity) {
        ctx.fillStyle = `rgba(255,196,61,${(0.25 + 0.75 * opacity).toFixed(3)})`;
        this.roundRect(x - fw / 2, top, fw, len * h + h * 0.12, fw / 2);
        ctx.fill();
      }
      ctx.fillStyle = "#9aa3b2";
      ctx.font = "10px sans-serif";
      ctx.textAlign = "center";
      ctx.fillText(finger, x, top - 6);
    }
    this.renderTimeline();
  }

  private renderTimeline(): void {
    const { ctx, canvas } = this;
    const script = this.script;
    const w = canvas.width;
    const y0 = canvas.height - 16;
    ctx.fillStyle = "#20242e";
    ctx.fillRect(0, y0 - 10, w, 26);
    if (!script || script.duration <= 0) return;
    for (const event of script.events) {
      const x = (event.t / script.duration) * (w - 8) + 4;
      ctx.fillStyle = KIND_COLORS[event.kind] ?? "#fff";
      const size = event.kind === "accent" ? 6 : 4;
      ctx.fillRect(x, y0 - (event.kind === "note" ? 6 : 2), 2, size);
    }
    const cursor = (this.clock / script.duration) * (w - 8) + 4;
    ctx.fillStyle = "#ffffff";
    ctx.fillRect(cursor, y0 - 10, 1.5, 26);
  }

  private roundRect(x: number, y: number, w: number, h: number, r: number): void {
    const ctx = this.ctx;
    ctx.beginPath();
    ctx.moveTo(x + r, y);
    ctx.arcTo(x + w, y, x + w, y + h, r);
    ctx.arcTo(x + w, y + h, x, y + h, r);
    ctx.arcTo(x, y + h, x, y, r);
    ctx.arcTo(x, y, x + w, y, r);
    ctx.closePath();
  }
}
