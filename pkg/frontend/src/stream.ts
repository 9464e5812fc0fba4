/** Live snapshot stream with reconnect and a monotone step guard.
 *
 * While the session runs, a rendered step counter must never decrease, so
 * stale messages get dropped per connection. Rewinds (reset, grid edits)
 * happen only while paused and pass through. Reconnects back off from
 * 0.5 s doubling to 8 s; each successful reconnect fires onResync so the
 * owner can re-fetch full session state.
 */

export interface SocketLike {
  onopen: (() => void) | null;
  onmessage: ((event: { data: unknown }) => void) | null;
  onclose: (() => void) | null;
  onerror: (() => void) | null;
  close(): void;
}

export type SocketFactory = (url: string) => SocketLike;

export interface StreamCallbacks<T> {
  onSnapshot: (snap: T) => void;
  onStatus?: (status: "connecting" | "connected" | "disconnected") => void;
  onResync?: () => void;
}

export interface StreamOptions {
  factory?: SocketFactory;
  baseDelayMs?: number;
  maxDelayMs?: number;
  schedule?: (fn: () => void, ms: number) => unknown;
}

export class SnapshotStream<T extends { step: number }> {
  private socket: SocketLike | null = null;
  private lastStep = -1;
  private delayMs: number;
  private running = false;
  private closed = false;
  private readonly factory: SocketFactory;
  private readonly baseDelayMs: number;
  private readonly maxDelayMs: number;
  private readonly schedule: (fn: () => void, ms: number) => unknown;

  constructor(
    private readonly url: string,
    private readonly callbacks: StreamCallbacks<T>,
    options: StreamOptions = {},
  ) {
    this.factory = options.factory ?? ((u) => new WebSocket(u) as unknown as SocketLike);
    this.baseDelayMs = options.baseDelayMs ?? 500;
    this.maxDelayMs = options.maxDelayMs ?? 8000;
    this.schedule = options.schedule ?? ((fn, ms) => setTimeout(fn, ms));
    this.delayMs = this.baseDelayMs;
  }

  /** The owner flips this with session status; guards apply while running. */
  setRunning(running: boolean): void {
    this.running = running;
  }

  connect(): void {
    if (this.closed) return;
    this.callbacks.onStatus?.("connecting");
    const first = this.lastStep < 0 && this.delayMs === this.baseDelayMs;
    const socket = this.factory(this.url);
    this.socket = socket;
    socket.onopen = () => {
      this.delayMs = this.baseDelayMs;
      this.lastStep = -1; // fresh connection, fresh ordering contract
      this.callbacks.onStatus?.("connected");
      if (!first) this.callbacks.onResync?.();
    };
    socket.onmessage = (event) => {
      const snap = JSON.parse(String(event.data)) as T;
      if (typeof snap.step !== "number") return; // error frame, not a snapshot
      if (this.running && snap.step <= this.lastStep) return;
      this.lastStep = snap.step;
      this.callbacks.onSnapshot(snap);
    };
    socket.onclose = () => {
      if (this.socket !== socket) return; // superseded
      this.socket = null;
      this.callbacks.onStatus?.("disconnected");
      if (this.closed) return;
      const wait = this.delayMs;
      this.delayMs = Math.min(this.delayMs * 2, this.maxDelayMs);
      this.schedule(() => this.connect(), wait);
    };
    socket.onerror = () => {
      // close always follows; nothing extra to do
    };
  }

  close(): void {
    this.closed = true;
    this.socket?.close();
    this.socket = null;
  }
}
