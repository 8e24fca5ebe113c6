/**
 * Protocol conformance against the real engine (`spiralgram serve`):
 * every op round-trips with schema-valid responses, and a scripted
 * drag-step-project session reproduces the headless CLI projection CSV
 * point for point.
 */

import { ChildProcess, execFile, spawn } from "node:child_process";
import { mkdtemp, readFile, rm } from "node:fs/promises";
import { tmpdir } from "node:os";
import { join, resolve } from "node:path";
import { fileURLToPath } from "node:url";
import { promisify } from "node:util";
import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { EngineClient, connectTcp } from "../src/client.js";
import {
  isClassifyPayload,
  isEngineResponse,
  isInvariantsPayload,
  isPolygonJson,
  isProjectionPayload,
} from "../src/protocol.js";
import { ExplorerSession } from "../src/session.js";

const execFileAsync = promisify(execFile);
const REPO_ROOT = resolve(fileURLToPath(new URL(".", import.meta.url)), "..", "..");
const PYTHON = process.env.SPIRALGRAM_PYTHON ?? "python3";

let proc: ChildProcess;
let client: EngineClient;

function startEngine(): Promise<{ proc: ChildProcess; host: string; port: number }> {
  return new Promise((resolvePromise, rejectPromise) => {
    const child = spawn(PYTHON, ["-m", "spiralgram.cli", "serve", "--port", "0"], {
      cwd: REPO_ROOT,
      stdio: ["ignore", "pipe", "pipe"],
    });
    let banner = "";
    const onData = (chunk: Buffer) => {
      banner += chunk.toString();
      const match = banner.match(/listening on ([\d.]+):(\d+)/);
      if (match) {
        child.stdout?.off("data", onData);
        resolvePromise({ proc: child, host: match[1]!, port: Number(match[2]) });
      }
    };
    child.stdout?.on("data", onData);
    child.stderr?.on("data", (c: Buffer) => process.stderr.write(c));
    child.once("exit", (code) =>
      rejectPromise(new Error(`engine exited early with code ${code}`)),
    );
  });
}

beforeAll(async () => {
  const started = await startEngine();
  proc = started.proc;
  client = new EngineClient(await connectTcp(started.host, started.port));
}, 30_000);

afterAll(() => {
  client?.close();
  proc?.kill();
});

describe("engine protocol conformance", () => {
  it("sample returns schema-valid invariants", async () => {
    const payload = await client.call("sample", { square: "KJ", n: 4, seed: 42 });
    expect(isInvariantsPayload(payload)).toBe(true);
  });

  it("reconstruct and invariants are mutually consistent", async () => {
    const sample = await client.call("sample", { square: "JI", n: 5, seed: 7 });
    if (!isInvariantsPayload(sample)) throw new Error("bad sample");
    const polygon = await client.call("reconstruct", { n: 5, x: sample.x });
    expect(isPolygonJson(polygon)).toBe(true);
    const back = await client.call("invariants", { polygon });
    if (!isInvariantsPayload(back)) throw new Error("bad invariants");
    for (let i = 0; i < sample.x.length; i++) {
      expect(Math.abs(back.x[i]! - sample.x[i]!)).toBeLessThan(1e-9);
    }
  });

  it("step works on both routes", async () => {
    const sample = await client.call("sample", { square: "KJ", n: 4, seed: 3 });
    if (!isInvariantsPayload(sample)) throw new Error("bad sample");
    const coord = await client.call("step", { x: sample.x, direction: "forward" });
    expect(isPolygonJson(coord.polygon)).toBe(true);
    const geo = await client.call("step", {
      polygon: coord.polygon,
      k: 4,
      direction: "forward",
    });
    expect(isPolygonJson(geo.polygon)).toBe(true);
  });

  it("classify and project return schema-valid payloads", async () => {
    const sample = await client.call("sample", { square: "KJ", n: 4, seed: 42 });
    if (!isInvariantsPayload(sample)) throw new Error("bad sample");
    const cls = await client.call("classify", { n: 4, x: sample.x });
    expect(isClassifyPayload(cls)).toBe(true);
    const proj = await client.call("project", { x: sample.x, steps: 8 });
    expect(isProjectionPayload(proj)).toBe(true);
    expect((proj as { points: unknown[] }).points).toHaveLength(9);
  });

  it("errors are schema-valid responses, not disconnects", async () => {
    const bad = await client.request("step", { x: [0.5, 0.5, 0.5, 0.5, 0.5, 0.5, 0.5, 0.5] });
    expect(isEngineResponse(bad)).toBe(true);
    expect(bad.ok).toBe(false);
    const unknown = await client.request("frobnicate" as never, {});
    expect(unknown.ok).toBe(false);
  });
});

describe("stepping a 3-spiral", () => {
  it("50 forward steps keep the projection scatter in a bounded box", async () => {
    const session = new ExplorerSession(client);
    await session.loadSample("KJ", 4, 11);
    for (let i = 0; i < 50; i++) {
      await session.stepMap("forward");
    }
    expect(session.state.scatter).toHaveLength(50);
    expect(session.state.classification?.grid).toEqual({ even: "K", odd: "J" });
    for (const [x, y] of session.state.scatter) {
      expect(Math.abs(x)).toBeLessThan(1e3);
      expect(Math.abs(y)).toBeLessThan(1e3);
    }
  }, 120_000);
});

describe("scripted session vs headless CLI", () => {
  it("drag-step-project reproduces the projection CSV point for point", async () => {
    const seed = 42;
    const n = 4;
    const steps = 12;

    // headless route: gen + project through the CLI
    const dir = await mkdtemp(join(tmpdir(), "spiralgram-"));
    try {
      const sampleFile = join(dir, "p.json");
      const projFile = join(dir, "proj.csv");
      await execFileAsync(
        PYTHON,
        ["-m", "spiralgram.cli", "gen", "--square", "KJ", "--n", String(n),
         "--seed", String(seed), "--out", sampleFile],
        { cwd: REPO_ROOT },
      );
      await execFileAsync(
        PYTHON,
        ["-m", "spiralgram.cli", "project", "--in", sampleFile, "--steps",
         String(steps), "--out", projFile],
        { cwd: REPO_ROOT },
      );
      const csv = (await readFile(projFile, "utf-8")).trim().split("\n").slice(1);
      const cliPoints = csv.map((row) => {
        const [, px, py] = row.split(",");
        return [Number(px), Number(py)] as const;
      });
      expect(cliPoints).toHaveLength(steps + 1);

      // interactive route: sample, drag a vertex away and back, step twice,
      // project the remaining orbit from the session state
      const session = new ExplorerSession(client);
      await session.loadSample("KJ", n, seed);
      const poly = session.state.polygon!;
      const original = poly.vertices[2]!;
      const originalAffine: [number, number] = [
        original[0]! / original[2]!,
        original[1]! / original[2]!,
      ];
      const away: [number, number] = [originalAffine[0] + 0.25, originalAffine[1] - 0.125];
      expect(await session.dragVertex(2, away)).toBe("accepted");
      expect(await session.dragVertex(2, originalAffine)).toBe("accepted");

      await session.stepMap("forward");
      await session.stepMap("forward");
      expect(session.state.stepCount).toBe(2);

      const sessionPoints = await session.projectOrbit(steps - 2);
      expect(sessionPoints).toHaveLength(steps - 1);
      for (let i = 0; i < sessionPoints.length; i++) {
        const [sx, sy] = sessionPoints[i]!;
        const [cx, cy] = cliPoints[i + 2]!;
        expect(Math.abs(sx - cx)).toBeLessThanOrEqual(1e-9);
        expect(Math.abs(sy - cy)).toBeLessThanOrEqual(1e-9);
      }
    } finally {
      await rm(dir, { recursive: true, force: true });
    }
  }, 60_000);
});
