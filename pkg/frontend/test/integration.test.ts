/** Live cross-check against the Python service and CLI.
 *
 * Spawns `teleact serve` on a scratch port, generates the THV-low preset
 * through the UI's client path, and requires the mesh digest to equal the
 * digest of the CLI-generated STL for the same preset; also round-trips the
 * UI-serialized parameters back through the CLI config route.
 */

import { execFile, spawn, type ChildProcess } from "node:child_process";
import { createHash } from "node:crypto";
import { mkdtempSync, readFileSync, rmSync, writeFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";
import { promisify } from "node:util";
import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { ApiClient } from "../src/api";
import { base64ToArrayBuffer, parseBinaryStl } from "../src/stl";

const execFileAsync = promisify(execFile);
const PORT = 8177;
const BASE = `http://127.0.0.1:${PORT}`;
const REPO_ROOT = join(__dirname, "..", "..");

let server: ChildProcess | null = null;
let workDir: string;

function sha256(buffer: ArrayBuffer | Buffer): string {
  return createHash("sha256").update(Buffer.from(buffer as ArrayBuffer)).digest("hex");
}

async function waitForHealth(api: ApiClient, timeoutMs: number): Promise<boolean> {
  const deadline = Date.now() + timeoutMs;
  while (Date.now() < deadline) {
    if (await api.health()) return true;
    await new Promise((r) => setTimeout(r, 250));
  }
  return false;
}

beforeAll(async () => {
  workDir = mkdtempSync(join(tmpdir(), "teleact-ui-"));
  server = spawn("python3", ["-m", "teleact.cli", "serve", "--port", String(PORT)], {
    cwd: REPO_ROOT,
    stdio: "ignore",
  });
  const ok = await waitForHealth(new ApiClient(BASE), 30_000);
  if (!ok) throw new Error("design service did not come up on " + BASE);
}, 40_000);

afterAll(() => {
  server?.kill();
  rmSync(workDir, { recursive: true, force: true });
});

describe("UI / CLI cross-check", () => {
  it("THV-low generated via the UI path equals the CLI STL digest", async () => {
    const api = new ApiClient(BASE);
    const presets = await api.presets();
    expect(presets.map((p) => p.name)).toContain("THV-low");
    const thvLow = presets.find((p) => p.name === "THV-low")!;

    const response = await api.generate(thvLow.params);
    expect(response.diagnostics.watertight).toBe(true);
    const uiBytes = base64ToArrayBuffer(response.mesh_stl_base64);
    const uiDigest = sha256(uiBytes);

    const cliPath = join(workDir, "thv-low.stl");
    await execFileAsync(
      "python3",
      ["-m", "teleact.cli", "generate", "--preset", "THV-low", "--out", cliPath],
      { cwd: REPO_ROOT },
    );
    const cliDigest = sha256(readFileSync(cliPath));
    expect(uiDigest).toBe(cliDigest);

    // parsed triangle count agrees with the service diagnostics
    expect(parseBinaryStl(uiBytes).triangleCount).toBe(response.diagnostics.n_triangles);
  }, 180_000);

  it("UI-serialized parameters re-imported into the CLI give an identical digest", async () => {
    const api = new ApiClient(BASE);
    const presets = await api.presets();
    const thvLow = presets.find((p) => p.name === "THV-low")!;

    const response = await api.generate(thvLow.params);
    const uiDigest = sha256(base64ToArrayBuffer(response.mesh_stl_base64));

    const configPath = join(workDir, "roundtrip.json");
    writeFileSync(configPath, JSON.stringify(thvLow.params, null, 2));
    const outPath = join(workDir, "roundtrip.stl");
    await execFileAsync(
      "python3",
      ["-m", "teleact.cli", "generate", "--config", configPath, "--out", outPath],
      { cwd: REPO_ROOT },
    );
    expect(sha256(readFileSync(outPath))).toBe(uiDigest);
  }, 180_000);

  it("bend endpoint matches the CLI prediction", async () => {
    const api = new ApiClient(BASE);
    const bend = await api.bend({ s0: 100, s1: 120, r: 20 });
    const { stdout } = await execFileAsync(
      "python3",
      ["-m", "teleact.cli", "bend", "--s0", "100", "--s1", "120", "--r", "20"],
      { cwd: REPO_ROOT },
    );
    const cli = JSON.parse(stdout);
    expect(bend.x_mm).toBe(cli.x_mm);
    expect(bend.h_mm).toBe(cli.h_mm);
    expect(bend.theta_deg).toBe(cli.theta_deg);
  }, 60_000);
});
