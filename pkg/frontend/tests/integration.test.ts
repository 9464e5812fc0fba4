/**
 * Scripted sandbox session against the real service: edit a grid, get a
 * revert notice for deleting the only goal, train live, and watch a
 * monotone step counter with one heatmap cell per grid cell.
 *
 * Spawns `python3 -m mlscope.cli serve` from the repo root; the mlscope
 * package must be installed (pip install -e .).
 */

import { ChildProcess, spawn } from "node:child_process";
import { fileURLToPath } from "node:url";
import path from "node:path";
import WebSocket from "ws";
import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { ApiClient } from "../src/api.js";
import { GridEditorState } from "../src/gridEditor.js";
import { heatmapColors } from "../src/heatmap.js";
import { SnapshotStream, SocketLike } from "../src/stream.js";
import { GridDoc, ServiceError, Snapshot } from "../src/types.js";

const PORT = 8931;
const BASE = `http://127.0.0.1:${PORT}`;
const REPO_ROOT = path.resolve(path.dirname(fileURLToPath(import.meta.url)), "..", "..");

let service: ChildProcess;

function wsFactory(url: string): SocketLike {
  return new WebSocket(url) as unknown as SocketLike;
}

async function waitForReady(timeoutMs = 30000): Promise<void> {
  const deadline = Date.now() + timeoutMs;
  while (Date.now() < deadline) {
    try {
      const resp = await fetch(`${BASE}/levels`);
      if (resp.ok) return;
    } catch {
      // not up yet
    }
    await new Promise((r) => setTimeout(r, 150));
  }
  throw new Error("service did not come up");
}

beforeAll(async () => {
  service = spawn("python3", ["-m", "mlscope.cli", "serve", "--port", String(PORT)], {
    cwd: REPO_ROOT,
    stdio: "ignore",
  });
  await waitForReady();
}, 40000);

afterAll(() => {
  service?.kill("SIGTERM");
});

describe("sandbox round trip", () => {
  const api = new ApiClient(BASE);

  const sandbox: GridDoc = {
    width: 6,
    height: 6,
    start: [0, 0],
    cells: ["......", "......", "......", "......", "......", ".....G"],
  };

  it("edits a grid, reverts on goal deletion, streams monotone steps", async () => {
    const created = await api.createSession({ grid: sandbox, seed: 7, speed: 3000 });
    expect(created.status).toBe("paused");

    const info = await api.getSession(created.id);
    const editor = new GridEditorState(info.grid);

    // paint a rock and confirm the server grid matches on the next GET
    editor.brush = "rock";
    const rockEdit = editor.applyBrush(2, 3);
    expect(rockEdit).toEqual({ x: 2, y: 3, cell: "R" });
    await api.editGrid(created.id, [rockEdit!]);
    const after = await api.getSession(created.id);
    expect(after.grid.cells[3][2]).toBe("R");
    expect(after.snapshot.max_q.every((v) => v === 0)).toBe(true); // table zeroed

    // deleting the only goal must be rejected and reverted with a notice
    editor.setGrid(after.grid);
    const before = editor.snapshotGrid();
    editor.brush = "empty";
    const goalEdit = editor.applyBrush(5, 5);
    expect(goalEdit).not.toBeNull();
    let notice = "";
    try {
      await api.editGrid(created.id, [goalEdit!]);
    } catch (err) {
      expect(err).toBeInstanceOf(ServiceError);
      const sr = err as ServiceError;
      expect(sr.status).toBe(422);
      expect(sr.code).toBe("InvalidGrid");
      notice = sr.message;
      editor.revert(before);
    }
    expect(notice).toMatch(/goal/);
    expect(editor.grid.cells[5][5]).toBe("G");
    const stillThere = await api.getSession(created.id);
    expect(stillThere.grid.cells[5][5]).toBe("G");

    // start training and observe the live stream
    const snapshots: Snapshot[] = [];
    const stream = new SnapshotStream<Snapshot>(
      api.streamUrl(created.id),
      { onSnapshot: (s) => snapshots.push(s) },
      { factory: wsFactory },
    );
    stream.connect();
    await new Promise((r) => setTimeout(r, 300));
    expect(snapshots.length).toBeGreaterThan(0); // current snapshot on subscribe

    await api.control(created.id, "start");
    stream.setRunning(true);
    await new Promise((r) => setTimeout(r, 1500));
    await api.control(created.id, "pause");
    stream.close();

    const steps = snapshots.map((s) => s.step);
    expect(steps.length).toBeGreaterThan(5);
    for (let i = 1; i < steps.length; i++) {
      expect(steps[i]).toBeGreaterThan(steps[i - 1]);
    }

    // exactly one heatmap cell per grid cell
    const last = snapshots[snapshots.length - 1];
    expect(last.max_q).toHaveLength(sandbox.width * sandbox.height);
    expect(heatmapColors(last.max_q)).toHaveLength(36);

    // edits unlock again once paused
    const finalInfo = await api.getSession(created.id);
    expect(finalInfo.status).toBe("paused");
    editor.setGrid(finalInfo.grid);
    editor.setLocked(false);
    editor.brush = "lava";
    expect(editor.applyBrush(1, 1)).not.toBeNull();
  }, 40000);

  it("rejects edits while running and allows them after pausing", async () => {
    const created = await api.createSession({ grid: sandbox, speed: 500 });
    await api.control(created.id, "start");
    const editor = new GridEditorState(sandbox);
    editor.setLocked(true);
    expect(editor.applyBrush(1, 0)).toBeNull(); // UI gate: no request at all
    // a rogue request bypassing the gate still gets a 409
    let code = "";
    try {
      await api.editGrid(created.id, [{ x: 1, y: 0, cell: "R" }]);
    } catch (err) {
      code = (err as ServiceError).code;
    }
    expect(code).toBe("SessionRunning");
    await api.control(created.id, "pause");
    const after = await api.editGrid(created.id, [{ x: 1, y: 0, cell: "R" }]);
    expect(after.grid.cells[0][1]).toBe("R");
  }, 40000);

  it("analyzes tutorial-free uploads end to end", async () => {
    // tiny silent wav assembled by hand: 0.5s of PCM16 zeros at 8kHz
    const sampleRate = 8000;
    const n = sampleRate / 2;
    const payload = Buffer.alloc(n * 2);
    const header = Buffer.alloc(44);
    header.write("RIFF", 0);
    header.writeUInt32LE(36 + payload.length, 4);
    header.write("WAVE", 8);
    header.write("fmt ", 12);
    header.writeUInt32LE(16, 16);
    header.writeUInt16LE(1, 20);
    header.writeUInt16LE(1, 22);
    header.writeUInt32LE(sampleRate, 24);
    header.writeUInt32LE(sampleRate * 2, 28);
    header.writeUInt16LE(2, 32);
    header.writeUInt16LE(16, 34);
    header.write("data", 36);
    header.writeUInt32LE(payload.length, 40);
    const wav = Buffer.concat([header, payload]);
    const script = await api.analyzeAudio(wav.buffer.slice(wav.byteOffset, wav.byteOffset + wav.byteLength) as ArrayBuffer);
    expect(script.duration).toBeCloseTo(0.5);
    expect(script.events).toHaveLength(0);
  }, 40000);
});
