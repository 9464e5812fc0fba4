/** Client-side copies of the three fixed tutorial scripts (rhythm at
 * 90 BPM, the C-major scale, accented fours) for offline preview. */

import { FingerName, HapticScriptDoc, ScriptEvent } from "./types.js";

const FINGER_FOR_CLASS: FingerName[] = [
  "thumb", "thumb", "index", "index", "middle", "ring",
  "ring", "little", "little", "thumb", "thumb", "index",
];

export function fingerForPitchClass(pc: number): FingerName {
  if (pc < 0 || pc > 11) throw new Error(`pitch class out of range: ${pc}`);
  return FINGER_FOR_CLASS[pc];
}

const BEAT_INTERVAL = 60 / 90;
const BEAT_COUNT = 24;
const SCALE = [0, 2, 4, 5, 7, 9, 11, 0]; // C D E F G A B C

export type TutorialKind = "rhythm" | "notes" | "accents";

export function tutorialScript(kind: TutorialKind): HapticScriptDoc {
  const events: ScriptEvent[] = [];
  if (kind === "rhythm" || kind === "accents") {
    for (let i = 0; i < BEAT_COUNT; i++) {
      const stressed = kind === "accents" && i % 4 === 0;
      events.push({
        t: i * BEAT_INTERVAL,
        kind: "beat",
        finger: "thumb",
        intensity: kind === "accents" && !stressed ? 0.8 : 1.0,
      });
      if (stressed) {
        events.push({ t: i * BEAT_INTERVAL, kind: "accent", finger: "thumb", intensity: 1.0 });
      }
    }
    return { version: 1, duration: 16, source: `tutorial:${kind}`, events };
  }
  SCALE.forEach((pc, i) => {
    events.push({
      t: i,
      kind: "note",
      finger: fingerForPitchClass(pc),
      intensity: 1.0,
      pitch_class: pc,
    });
  });
  return { version: 1, duration: SCALE.length, source: "tutorial:notes", events };
}
