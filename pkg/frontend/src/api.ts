/** Thin typed client over the service's HTTP surface. */

import {
  GridDoc,
  HapticScriptDoc,
  IsochromeResult,
  LevelInfo,
  ServiceError,
  SessionInfo,
  SessionStatus,
} from "./types.js";

export interface GridEdit {
  x: number;
  y: number;
  cell: string; // '.', 'R', 'L', 'G', or 'S' to move the start
}

async function parseError(resp: Response): Promise<never> {
  let body = { code: "HttpError", message: `status ${resp.status}` };
  try {
    body = await resp.json();
  } catch {
    // non-JSON error body; keep the fallback
  }
  throw new ServiceError(resp.status, body);
}

export class ApiClient {
  constructor(public baseUrl: string) {}

  private async json<T>(path: string, init?: RequestInit): Promise<T> {
    const resp = await fetch(`${this.baseUrl}${path}`, init);
    if (!resp.ok) await parseError(resp);
    return (await resp.json()) as T;
  }

  levels(): Promise<{ levels: LevelInfo[] }> {
    return this.json("/levels");
  }

  createSession(body: {
    level?: number;
    grid?: GridDoc;
    seed?: number;
    speed?: number;
  }): Promise<{ id: string; status: SessionStatus; speed: number }> {
    return this.json("/sessions", {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(body),
    });
  }

  getSession(id: string): Promise<SessionInfo> {
    return this.json(`/sessions/${id}`);
  }

  control(
    id: string,
    command: "start" | "pause" | "reset" | "set_speed" | "set_config",
    extra: Record<string, unknown> = {},
  ): Promise<{ status: SessionStatus; speed: number }> {
    return this.json(`/sessions/${id}/control`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify({ command, ...extra }),
    });
  }

  editGrid(id: string, edits: GridEdit[]): Promise<{ grid: GridDoc }> {
    return this.json(`/sessions/${id}/grid`, {
      method: "PUT",
      headers: { "content-type": "application/json" },
      body: JSON.stringify({ edits }),
    });
  }

  submitIsochrome(image: Blob | ArrayBuffer, k: number, seed = 0): Promise<{ job_id: string }> {
    return this.json(`/isochrome/jobs?k=${k}&seed=${seed}`, {
      method: "POST",
      body: image,
    });
  }

  /** Resolves null while the job is still pending (202). */
  async fetchIsochrome(jobId: string): Promise<IsochromeResult | null> {
    const resp = await fetch(`${this.baseUrl}/isochrome/jobs/${jobId}`);
    if (resp.status === 202) return null;
    if (!resp.ok) await parseError(resp);
    return (await resp.json()) as IsochromeResult;
  }

  analyzeAudio(wav: Blob | ArrayBuffer): Promise<HapticScriptDoc> {
    return this.json("/haptics/analyze", { method: "POST", body: wav });
  }

  streamUrl(id: string): string {
    const ws = this.baseUrl.replace(/^http/, "ws");
    return `${ws}/sessions/${id}/stream`;
  }
}
