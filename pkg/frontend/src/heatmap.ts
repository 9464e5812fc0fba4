/** Q-value heatmap coloring: a pure light->deep green ramp.
 *
 * Normalization is per snapshot (min..max of the current max-q vector) so
 * early, tiny values stay visible; a degenerate scale (all values equal)
 * renders everything at the ramp bottom.
 */

const LIGHT: [number, number, number] = [232, 245, 228];
const DEEP: [number, number, number] = [16, 112, 43];

export function heatColor(value: number, min: number, max: number): string {
  const t = max > min ? (value - min) / (max - min) : 0;
  const clamped = Math.min(1, Math.max(0, t));
  const r = Math.round(LIGHT[0] + (DEEP[0] - LIGHT[0]) * clamped);
  const g = Math.round(LIGHT[1] + (DEEP[1] - LIGHT[1]) * clamped);
  const b = Math.round(LIGHT[2] + (DEEP[2] - LIGHT[2]) * clamped);
  return `rgb(${r},${g},${b})`;
}

/** One color per cell, normalized over the snapshot's own value range. */
export function heatmapColors(maxQ: number[]): string[] {
  if (maxQ.length === 0) return [];
  let min = maxQ[0];
  let max = maxQ[0];
  for (const v of maxQ) {
    if (v < min) min = v;
    if (v > max) max = v;
  }
  return maxQ.map((v) => heatColor(v, min, max));
}

export const DEEPEST = heatColor(1, 0, 1);
export const LIGHTEST = heatColor(0, 0, 1);

/**
 * Colors for a grid of the given cell count, or null when the snapshot's
 * max-q vector does not match (stale data: the caller must abort the
 * heat rendering and flag it).
 */
export function heatmapForGrid(cellCount: number, maxQ: number[]): string[] | null {
  if (maxQ.length !== cellCount) return null;
  return heatmapColors(maxQ);
}
