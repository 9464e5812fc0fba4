/** Minimal ASCII PLY reader for the cluster point clouds. */

export interface PointCloud {
  positions: Float32Array; // xyz triples
  colors: Uint8Array; // rgb triples
  count: number;
}

export function parsePly(text: string): PointCloud {
  const lines = text.split(/\r?\n/);
  if (lines[0]?.trim() !== "ply") throw new Error("not a PLY document");
  let count = -1;
  let body = -1;
  for (let i = 1; i < lines.length; i++) {
    const line = lines[i].trim();
    if (line.startsWith("element vertex")) {
      count = parseInt(line.split(/\s+/)[2], 10);
    } else if (line === "end_header") {
      body = i + 1;
      break;
    }
  }
  if (count < 0 || body < 0) throw new Error("malformed PLY header");
  const positions = new Float32Array(count * 3);
  const colors = new Uint8Array(count * 3);
  for (let v = 0; v < count; v++) {
    const parts = lines[body + v].trim().split(/\s+/);
    if (parts.length < 6) throw new Error(`vertex ${v} is incomplete`);
    positions[v * 3] = parseFloat(parts[0]);
    positions[v * 3 + 1] = parseFloat(parts[1]);
    positions[v * 3 + 2] = parseFloat(parts[2]);
    colors[v * 3] = parseInt(parts[3], 10);
    colors[v * 3 + 1] = parseInt(parts[4], 10);
    colors[v * 3 + 2] = parseInt(parts[5], 10);
  }
  return { positions, colors, count };
}
