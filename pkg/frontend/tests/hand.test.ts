import { describe, expect, it } from "vitest";

import { HIGHLIGHT_SECONDS, activeHighlights, timelineLanes } from "../src/hand.js";
import { fingerForPitchClass, tutorialScript } from "../src/tutorials.js";
import { ScriptEvent } from "../src/types.js";

describe("hand highlight model", () => {
  const events: ScriptEvent[] = [
    { t: 1.0, kind: "note", finger: "middle", intensity: 0.6, pitch_class: 4 },
    { t: 1.05, kind: "beat", finger: "thumb", intensity: 1.0 },
  ];

  it("lights a finger for 150ms from its event time", () => {
    expect(activeHighlights(events, 0.99).has("middle")).toBe(false);
    expect(activeHighlights(events, 1.0).get("middle")).toBe(0.6);
    expect(activeHighlights(events, 1.0 + HIGHLIGHT_SECONDS - 1e-6).get("middle")).toBe(0.6);
    expect(activeHighlights(events, 1.0 + HIGHLIGHT_SECONDS).has("middle")).toBe(false);
  });

  it("keeps the strongest opacity for overlapping events on one finger", () => {
    const overlapping: ScriptEvent[] = [
      { t: 0.0, kind: "beat", finger: "thumb", intensity: 0.4 },
      { t: 0.05, kind: "accent", finger: "thumb", intensity: 0.9 },
    ];
    expect(activeHighlights(overlapping, 0.06).get("thumb")).toBe(0.9);
  });

  it("highlights the middle finger exactly when class-E events fire", () => {
    const script = tutorialScript("notes");
    const eTimes = script.events.filter((e) => e.pitch_class === 4).map((e) => e.t);
    expect(eTimes).toEqual([2]); // C D E...: E is the third note
    for (const event of script.events) {
      const lit = activeHighlights(script.events, event.t + 0.01);
      expect(lit.has("middle")).toBe(eTimes.includes(event.t));
    }
  });
});

describe("tutorial scripts", () => {
  it("rhythm: 24 beats over 16s", () => {
    const script = tutorialScript("rhythm");
    expect(script.events).toHaveLength(24);
    expect(script.events.every((e) => e.kind === "beat")).toBe(true);
    expect(script.duration).toBe(16);
  });

  it("notes: C-major scale with the spec'd finger layout", () => {
    const script = tutorialScript("notes");
    expect(script.events.map((e) => e.finger)).toEqual([
      "thumb", "index", "middle", "ring", "little", "thumb", "index", "thumb",
    ]);
    expect(script.events[3].finger).toBe("ring"); // F
  });

  it("accents: every 4th beat is doubled by an accent (6 total)", () => {
    const script = tutorialScript("accents");
    const lanes = timelineLanes(script.events);
    expect(lanes.beat).toHaveLength(24);
    expect(lanes.accent).toHaveLength(6);
  });

  it("finger map partitions the 12 classes 4/3/1/2/2", () => {
    const byFinger = new Map<string, number>();
    for (let pc = 0; pc < 12; pc++) {
      const f = fingerForPitchClass(pc);
      byFinger.set(f, (byFinger.get(f) ?? 0) + 1);
    }
    expect([...byFinger.values()].sort()).toEqual([1, 2, 2, 3, 4]);
    expect(fingerForPitchClass(4)).toBe("middle"); // E
    expect(fingerForPitchClass(8)).toBe("little"); // G#
  });
});
