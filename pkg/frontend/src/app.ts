/** Sandbox wiring: panels, controls, and server round trips. */

import { ApiClient } from "./api.js";
import { Brush, GridEditorState } from "./gridEditor.js";
import { GridView } from "./gridView.js";
import { HandView } from "./handView.js";
import { parsePly } from "./ply.js";
import { PointCloudView } from "./pointCloud.js";
import { SnapshotStream } from "./stream.js";
import { tutorialScript } from "./tutorials.js";
import {
  GridDoc,
  ServiceError,
  SessionStatus,
  Snapshot,
} from "./types.js";

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing element #${id}`);
  return node as T;
}

function sandboxGrid(): GridDoc {
  const rows = Array.from({ length: 8 }, () => "........".split(""));
  rows[7][7] = "G";
  return {
    width: 8,
    height: 8,
    start: [0, 0],
    cells: rows.map((r) => r.join("")),
  };
}

class App {
  private api = new ApiClient("http://localhost:8080");
  private editor: GridEditorState | null = null;
  private gridView: GridView;
  private pointCloudView: PointCloudView;
  private handView: HandView;
  private stream: SnapshotStream<Snapshot> | null = null;
  private sessionId: string | null = null;
  private snapshot: Snapshot | null = null;

  constructor() {
    this.gridView = new GridView(el("grid-canvas"), {
      onCellClick: (x, y) => void this.paintCell(x, y),
    });
    this.pointCloudView = new PointCloudView(el("cloud-canvas"));
    this.handView = new HandView(el("hand-canvas"));
    this.bindHeader();
    this.bindGridPanel();
    this.bindIsochromePanel();
    this.bindHapticsPanel();
    void this.loadLevels();
  }

  // --- header / connection -------------------------------------------------

  private bindHeader(): void {
    const input = el<HTMLInputElement>("api-base");
    input.value = this.api.baseUrl;
    input.addEventListener("change", () => {
      this.api = new ApiClient(input.value.replace(/\/$/, ""));
      void this.loadLevels();
    });
  }

  private notice(text: string, bad = false): void {
    const box = el("notice");
    box.textContent = text;
    box.className = bad ? "notice bad" : "notice";
    if (text) setTimeout(() => {
      if (box.textContent === text) box.textContent = "";
    }, 4000);
  }

  private setConnection(state: string): void {
    el("conn-state").textContent = state;
    el("conn-state").className = `conn ${state}`;
  }

  // --- gridworld panel -------------------------------------------------------

  private bindGridPanel(): void {
    el("btn-sandbox").addEventListener("click", () => void this.newSession({ grid: sandboxGrid() }));
    el("btn-start").addEventListener("click", () => void this.control("start"));
    el("btn-pause").addEventListener("click", () => void this.control("pause"));
    el("btn-reset").addEventListener("click", () => void this.control("reset"));
    const speed = el<HTMLInputElement>("speed-slider");
    speed.addEventListener("change", () => {
      const value = Math.round(10 ** parseFloat(speed.value));
      el("speed-label").textContent = `${value} steps/s`;
      if (this.sessionId) void this.controlRaw("set_speed", { speed: value });
    });
    for (const brush of ["empty", "rock", "lava", "goal", "start"] as Brush[]) {
      el(`brush-${brush}`).addEventListener("click", () => {
        if (this.editor) this.editor.brush = brush;
        document.querySelectorAll(".brush").forEach((b) => b.classList.remove("active"));
        el(`brush-${brush}`).classList.add("active");
      });
    }
  }

  private async loadLevels(): Promise<void> {
    try {
      const { levels } = await this.api.levels();
      this.setConnection("connected");
      const bar = el("level-bar");
      bar.querySelectorAll("button.level").forEach((b) => b.remove());
      for (const level of levels) {
        const btn = document.createElement("button");
        btn.className = "level";
        btn.textContent = `${level.number}. ${level.name}`;
        btn.title = `${level.description} (shortest path: ${level.bfs_length})`;
        btn.addEventListener("click", () => void this.newSession({ level: level.number }));
        bar.appendChild(btn);
      }
    } catch {
      this.setConnection("offline");
    }
  }

  private async newSession(spec: { level?: number; grid?: GridDoc }): Promise<void> {
    try {
      this.stream?.close();
      const created = await this.api.createSession({ ...spec, speed: 200 });
      this.sessionId = created.id;
      const info = await this.api.getSession(created.id);
      this.editor = new GridEditorState(info.grid);
      this.snapshot = info.snapshot;
      this.applyStatus(info.status);
      this.gridView.update(this.editor.grid, this.snapshot);
      this.openStream(created.id);
      this.notice(`session ${created.id} ready`);
    } catch (err) {
      this.surface(err);
    }
  }

  private openStream(id: string): void {
    this.stream = new SnapshotStream<Snapshot>(this.api.streamUrl(id), {
      onSnapshot: (snap) => {
        this.snapshot = snap;
        if (this.editor) this.gridView.update(this.editor.grid, snap);
        this.renderStats(snap);
      },
      onStatus: (s) => this.setConnection(s === "connected" ? "streaming" : s),
      onResync: () => void this.resync(),
    });
    this.stream.connect();
  }

  private async resync(): Promise<void> {
    if (!this.sessionId) return;
    try {
      const info = await this.api.getSession(this.sessionId);
      this.editor?.setGrid(info.grid);
      this.snapshot = info.snapshot;
      this.applyStatus(info.status);
      if (this.editor) this.gridView.update(this.editor.grid, info.snapshot);
    } catch (err) {
      this.surface(err);
    }
  }

  private applyStatus(status: SessionStatus): void {
    this.editor?.setLocked(status === "running");
    this.stream?.setRunning(status === "running");
    el("session-status").textContent = status;
    el("grid-lock").classList.toggle("visible", status === "running");
  }

  private async control(command: "start" | "pause" | "reset"): Promise<void> {
    await this.controlRaw(command, {});
  }

  private async controlRaw(command: string, extra: Record<string, unknown>): Promise<void> {
    if (!this.sessionId) {
      this.notice("create a session first", true);
      return;
    }
    try {
      const result = await this.api.control(
        this.sessionId,
        command as "start",
        extra,
      );
      this.applyStatus(result.status);
      if (command === "reset") await this.resync();
    } catch (err) {
      this.surface(err);
    }
  }

  private async paintCell(x: number, y: number): Promise<void> {
    if (!this.editor || !this.sessionId) return;
    if (this.editor.locked) {
      this.notice("pause the session to edit the grid", true);
      return;
    }
    const before = this.editor.snapshotGrid();
    const edit = this.editor.applyBrush(x, y);
    if (!edit) return;
    this.gridView.update(this.editor.grid, this.snapshot);
    try {
      const { grid } = await this.api.editGrid(this.sessionId, [edit]);
      this.editor.setGrid(grid);
      await this.resync(); // table zeroed server-side; refresh counters
    } catch (err) {
      this.editor.revert(before);
      this.gridView.update(this.editor.grid, this.snapshot);
      this.surface(err);
    }
  }

  private renderStats(snap: Snapshot): void {
    el("stat-episode").textContent = String(snap.episode);
    el("stat-step").textContent = String(snap.step);
    el("stat-epsilon").textContent = snap.epsilon.toFixed(3);
    el("stat-reward").textContent = snap.last_reward.toFixed(1);
    el("stat-return").textContent = snap.episode_return.toFixed(1);
  }

  private surface(err: unknown): void {
    if (err instanceof ServiceError) {
      this.notice(`${err.code}: ${err.message}`, true);
    } else {
      this.notice(String(err), true);
    }
  }

  // --- isochrome panel ----------------------------------------------------------

  private bindIsochromePanel(): void {
    const file = el<HTMLInputElement>("iso-file");
    el("btn-decompose").addEventListener("click", async () => {
      const chosen = file.files?.[0];
      if (!chosen) {
        this.notice("choose a PNG or JPEG first", true);
        return;
      }
      const k = parseInt(el<HTMLInputElement>("iso-k").value, 10);
      try {
        const { job_id } = await this.api.submitIsochrome(chosen, k);
        this.notice(`clustering job ${job_id} submitted`);
        await this.pollIsochrome(job_id);
      } catch (err) {
        this.surface(err);
      }
    });
  }

  private async pollIsochrome(jobId: string): Promise<void> {
    for (let tries = 0; tries < 600; tries++) {
      let result;
      try {
        result = await this.api.fetchIsochrome(jobId);
      } catch (err) {
        this.surface(err);
        return;
      }
      if (result) {
        const gallery = el("layer-gallery");
        gallery.innerHTML = "";
        for (const layer of result.layers) {
          const card = document.createElement("figure");
          const img = document.createElement("img");
          img.src = `data:image/png;base64,${layer.png_base64}`;
          const cap = document.createElement("figcaption");
          const [r, g, b] = layer.centroid_color;
          cap.textContent = `rgb(${r},${g},${b}) · ${layer.pixel_count}px`;
          card.append(img, cap);
          gallery.appendChild(card);
        }
        el("iso-summary").textContent =
          `k=${result.model.k} inertia=${result.model.inertia.toFixed(0)} ` +
          `iterations=${result.model.iterations} stride=${result.stride}`;
        this.pointCloudView.setCloud(parsePly(result.point_cloud_ply));
        return;
      }
      await new Promise((resolve) => setTimeout(resolve, 250));
    }
    this.notice("clustering job timed out", true);
  }

  // --- haptics panel ---------------------------------------------------------------

  private bindHapticsPanel(): void {
    const file = el<HTMLInputElement>("wav-file");
    el("btn-analyze").addEventListener("click", async () => {
      const chosen = file.files?.[0];
      if (!chosen) {
        this.notice("choose a WAV first", true);
        return;
      }
      try {
        const script = await this.api.analyzeAudio(chosen);
        this.handView.setScript(script);
        el("script-summary").textContent =
          `${script.events.length} events over ${script.duration.toFixed(1)}s`;
      } catch (err) {
        this.surface(err);
      }
    });
    for (const kind of ["rhythm", "notes", "accents"] as const) {
      el(`btn-tutorial-${kind}`).addEventListener("click", () => {
        const script = tutorialScript(kind);
        this.handView.setScript(script);
        el("script-summary").textContent =
          `tutorial:${kind} · ${script.events.length} events over ${script.duration}s`;
      });
    }
    el("btn-play").addEventListener("click", () => this.handView.play());
    el("btn-stop").addEventListener("click", () => this.handView.stop());
  }
}

new App();
