/** Wire types mirrored from the mlscope service API. */

export interface Snapshot {
  episode: number;
  step: number;
  agent_pos: [number, number];
  epsilon: number;
  last_reward: number;
  episode_return: number;
  max_q: number[];
}

export interface GridDoc {
  width: number;
  height: number;
  start: [number, number];
  cells: string[]; // rows of '.', 'R', 'L', 'G'
}

export interface TrainingConfig {
  alpha: number;
  gamma: number;
  epsilon_start: number;
  epsilon_decay: number;
  epsilon_min: number;
  max_steps_per_episode: number;
  seed: number;
}

export type SessionStatus = "paused" | "running" | "finished";

export interface SessionInfo {
  id: string;
  status: SessionStatus;
  speed: number;
  grid: GridDoc;
  config: TrainingConfig;
  snapshot: Snapshot;
  bfs_length: number | null;
}

export interface LevelInfo {
  number: number;
  name: string;
  description: string;
  grid: GridDoc;
  bfs_length: number | null;
}

export type FingerName = "thumb" | "index" | "middle" | "ring" | "little";
export type EventKindName = "beat" | "note" | "accent";

export interface ScriptEvent {
  t: number;
  kind: EventKindName;
  finger: FingerName;
  intensity: number;
  pitch_class?: number;
}

export interface HapticScriptDoc {
  version: number;
  duration: number;
  source: string;
  events: ScriptEvent[];
}

export interface IsochromeLayer {
  cluster_index: number;
  centroid_color: [number, number, number];
  pixel_count: number;
  png_base64: string;
}

export interface IsochromeResult {
  width: number;
  height: number;
  stride: number;
  model: {
    k: number;
    centroids: number[][];
    inertia: number;
    iterations: number;
    layers: { cluster_index: number; centroid_color: number[]; pixel_count: number }[];
  };
  layers: IsochromeLayer[];
  point_cloud_ply: string;
}

export interface ApiError {
  code: string;
  message: string;
}

export class ServiceError extends Error {
  readonly code: string;
  readonly status: number;

  constructor(status: number, body: ApiError) {
    super(body.message);
    this.code = body.code;
    this.status = status;
  }
}
