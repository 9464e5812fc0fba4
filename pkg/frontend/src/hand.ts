/** Haptic playback model: which fingers glow at a given script time.
 *
 * Every event lights its finger for 150 ms with opacity proportional to
 * intensity; overlapping events keep the strongest opacity.
 */

import { FingerName, ScriptEvent } from "./types.js";

export const HIGHLIGHT_SECONDS = 0.15;

export const FINGERS: FingerName[] = ["thumb", "index", "middle", "ring", "little"];

export type Highlights = Map<FingerName, number>;

export function activeHighlights(events: ScriptEvent[], t: number): Highlights {
  const out: Highlights = new Map();
  for (const event of events) {
    if (event.t <= t && t < event.t + HIGHLIGHT_SECONDS) {
      const current = out.get(event.finger) ?? 0;
      if (event.intensity > current) out.set(event.finger, event.intensity);
    }
  }
  return out;
}

/** Events indexed for a simple timeline strip (kind lanes). */
export function timelineLanes(events: ScriptEvent[]): Record<string, ScriptEvent[]> {
  const lanes: Record<string, ScriptEvent[]> = { beat: [], note: [], accent: [] };
  for (const event of events) lanes[event.kind]?.push(event);
  return lanes;
}
