/** Rotatable 3D scatter of cluster points on a plain 2D canvas.
 *
 * Points live in the [0, 255]^3 color cube; drag to orbit, wheel to zoom.
 */

import { PointCloud } from "./ply.js";

export class PointCloudView {
  private readonly ctx: CanvasRenderingContext2D;
  private cloud: PointCloud | null = null;
  private yaw = 0.8;
  private pitch = -0.45;
  private zoom = 1.0;
  private dragging = false;
  private lastX = 0;
  private lastY = 0;

  constructor(private readonly canvas: HTMLCanvasElement) {
    const ctx = canvas.getContext("2d");
    if (!ctx) throw new Error("no 2d context");
    this.ctx = ctx;
    canvas.addEventListener("mousedown", (ev) => {
      this.dragging = true;
      this.lastX = ev.clientX;
      this.lastY = ev.clientY;
    });
    window.addEventListener("mouseup", () => (this.dragging = false));
    window.addEventListener("mousemove", (ev) => {
      if (!this.dragging) return;
      this.yaw += (ev.clientX - this.lastX) * 0.01;
      this.pitch += (ev.clientY - this.lastY) * 0.01;
      this.pitch = Math.max(-1.5, Math.min(1.5, this.pitch));
      this.lastX = ev.clientX;
      this.lastY = ev.clientY;
      this.render();
    });
    canvas.addEventListener("wheel", (ev) => {
      ev.preventDefault();
      this.zoom *= ev.deltaY < 0 ? 1.1 : 0.9;
      this.zoom = Math.max(0.3, Math.min(4, this.zoom));
      this.render();
    });
  }

  setCloud(cloud: PointCloud | null): void {
    this.cloud = cloud;
    this.render();
  }

  render(): void {
    const { ctx, canvas } = this;
    ctx.fillStyle = "#14161d";
    ctx.fillRect(0, 0, canvas.width, canvas.height);
    const cloud = this.cloud;
    if (!cloud || cloud.count === 0) {
      ctx.fillStyle = "#9aa3b2";
      ctx.font = "14px sans-serif";
      ctx.textAlign = "center";
      ctx.fillText("no point cloud loaded", canvas.width / 2, canvas.height / 2);
      return;
    }
    const cosY = Math.cos(this.yaw);
    const sinY = Math.sin(this.yaw);
    const cosP = Math.cos(this.pitch);
    const sinP = Math.sin(this.pitch);
    const scale = (Math.min(canvas.width, canvas.height) / 300) * this.zoom;
    const cx = canvas.width / 2;
    const cy = canvas.height / 2;
    const pos = cloud.positions;
    const col = cloud.colors;
    for (let i = 0; i < cloud.count; i++) {
      const x = pos[i * 3] - 127.5;
      const y = pos[i * 3 + 1] - 127.5;
      const z = pos[i * 3 + 2] - 127.5;
      const rx = x * cosY + z * sinY;
      const rz = -x * sinY + z * cosY;
      const ry = y * cosP - rz * sinP;
      ctx.fillStyle = `rgb(${col[i * 3]},${col[i * 3 + 1]},${col[i * 3 + 2]})`;
      ctx.fillRect(cx + rx * scale, cy + ry * scale, 2, 2);
    }
  }
}
