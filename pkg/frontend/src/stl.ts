/** Binary STL parsing: 80-byte header, uint32 count, 50 bytes per triangle. */

export interface ParsedStl {
  triangleCount: number;
  /** flat xyz positions, 9 floats per triangle */
  positions: Float32Array;
  /** per-triangle normals as stored in the file */
  normals: Float32Array;
}

export class StlParseError extends Error {}

export function parseBinaryStl(data: ArrayBuffer): ParsedStl {
  if (data.byteLength < 84) {
    throw new StlParseError(`file too short for a binary STL (${data.byteLength} bytes)`);
  }
  const view = new DataView(data);
  const count = view.getUint32(80, true);
  const expected = 84 + 50 * count;
  if (data.byteLength !== expected) {
    throw new StlParseError(
      `triangle count ${count} implies ${expected} bytes, file has ${data.byteLength}`,
    );
  }
  const positions = new Float32Array(count * 9);
  const normals = new Float32Array(count * 3);
  for (let t = 0; t < count; t++) {
    const base = 84 + 50 * t;
    for (let k = 0; k < 3; k++) {
      normals[t * 3 + k] = view.getFloat32(base + 4 * k, true);
    }
    for (let v = 0; v < 9; v++) {
      positions[t * 9 + v] = view.getFloat32(base + 12 + 4 * v, true);
    }
  }
  return { triangleCount: count, positions, normals };
}

export function base64ToArrayBuffer(b64: string): ArrayBuffer {
  if (typeof atob === "function") {
    const binary = atob(b64);
    const bytes = new Uint8Array(binary.length);
    for (let i = 0; i < binary.length; i++) {
      bytes[i] = binary.charCodeAt(i);
    }
    return bytes.buffer;
  }
  // node (tests)
  const buf = Buffer.from(b64, "base64");
  return buf.buffer.slice(buf.byteOffset, buf.byteOffset + buf.byteLength);
}

/** Intersection polyline of the triangle soup with the half-plane at angle thetaDeg.
 *
 * Returns (rho, z) segments for the cross-section outline overlay; purely a
 * display slice of the service-produced mesh, no geometry generation.
 */
export function sectionOutline(
  mesh: ParsedStl,
  thetaDeg: number,
): Array<[number, number, number, number]> {
  const theta = (thetaDeg * Math.PI) / 180;
  const nx = -Math.sin(theta);
  const ny = Math.cos(theta);
  const dx = Math.cos(theta);
  const dy = Math.sin(theta);
  const segments: Array<[number, number, number, number]> = [];
  const p = mesh.positions;
  for (let t = 0; t < mesh.triangleCount; t++) {
    const pts: number[][] = [];
    for (let v = 0; v < 3; v++) {
      pts.push([p[t * 9 + v * 3], p[t * 9 + v * 3 + 1], p[t * 9 + v * 3 + 2]]);
    }
    const cut: number[][] = [];
    for (let e = 0; e < 3; e++) {
      const a = pts[e];
      const b = pts[(e + 1) % 3];
      const da = a[0] * nx + a[1] * ny;
      const db = b[0] * nx + b[1] * ny;
      if ((da > 0 && db > 0) || (da < 0 && db < 0)) continue;
      if (da === db) continue;
      const s = da / (da - db);
      const x = a[0] + s * (b[0] - a[0]);
      const y = a[1] + s * (b[1] - a[1]);
      const z = a[2] + s * (b[2] - a[2]);
      const rho = x * dx + y * dy;
      if (rho >= 0) cut.push([rho, z]);
    }
    if (cut.length === 2) {
      segments.push([cut[0][0], cut[0][1], cut[1][0], cut[1][1]]);
    }
  }
  return segments;
}
