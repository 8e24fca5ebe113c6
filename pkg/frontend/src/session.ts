/**
 * Explorer session state.
 *
 * Every number displayed originates from an engine response: vertex edits
 * are proposed to the engine, which recomputes invariants and classification
 * or rejects the edit; stepping and projecting likewise round-trip.  The
 * session only remembers the latest engine answers.
 */

import { EngineClient, EngineError } from "./client.js";
import {
  ClassifyJson,
  PolygonJson,
  isClassifyPayload,
  isInvariantsPayload,
  isPolygonJson,
  isProjectionPayload,
} from "./protocol.js";

export interface OverlayToggles {
  transversals: boolean;
  orientationShading: boolean;
  scatter: boolean;
}

export interface SessionState {
  n: number;
  k: number;
  stepCount: number;
  polygon: PolygonJson | null;
  invariants: number[] | null;
  classification: ClassifyJson | null;
  scatter: [number, number][];
  overlays: OverlayToggles;
}

export type DragOutcome = "accepted" | "rejected";

function expectPolygon(value: unknown): PolygonJson {
  if (!isPolygonJson(value)) throw new EngineError("malformed polygon payload");
  return value;
}

function expectInvariants(value: Record<string, unknown>): number[] {
  if (!isInvariantsPayload(value)) throw new EngineError("malformed invariants payload");
  return value.x;
}

export class ExplorerSession {
  readonly state: SessionState = {
    n: 0,
    k: 3,
    stepCount: 0,
    polygon: null,
    invariants: null,
    classification: null,
    scatter: [],
    overlays: { transversals: true, orientationShading: false, scatter: true },
  };

  constructor(private client: EngineClient) {}

  setK(k: number): void {
    this.state.k = k;
  }

  toggleOverlay(name: keyof OverlayToggles): void {
    this.state.overlays[name] = !this.state.overlays[name];
  }

  /** Start from a random sample inside the given grid square. */
  async loadSample(square: string, n: number, seed: number): Promise<void> {
    const sample = await this.client.call("sample", { square, n, seed });
    const x = expectInvariants(sample);
    const polygon = expectPolygon(await this.client.call("reconstruct", { n, x }));
    this.state.n = n;
    this.state.stepCount = 0;
    this.state.scatter = [];
    this.state.polygon = polygon;
    this.state.invariants = x;
    await this.refreshClassification();
  }

  /** Load an explicit polygon (e.g. pasted JSON). */
  async loadPolygon(polygon: PolygonJson): Promise<void> {
    const x = expectInvariants(await this.client.call("invariants", { polygon }));
    this.state.n = polygon.n;
    this.state.stepCount = 0;
    this.state.scatter = [];
    this.state.polygon = polygon;
    this.state.invariants = x;
    await this.refreshClassification();
  }

  /**
   * Propose moving one vertex to a new affine position.  The engine either
   * returns recomputed invariants (edit accepted) or errors on a degenerate
   * configuration, in which case the session state is untouched and the
   * caller should snap the vertex back.
   */
  async dragVertex(index: number, position: [number, number]): Promise<DragOutcome> {
    if (!this.state.polygon) throw new EngineError("no polygon loaded");
    const candidate: PolygonJson = {
      ...this.state.polygon,
      vertices: this.state.polygon.vertices.map((v, i) =>
        i === index ? [position[0], position[1], 1] : v,
      ),
    };
    let x: number[];
    try {
      x = expectInvariants(await this.client.call("invariants", { polygon: candidate }));
    } catch (error) {
      if (error instanceof EngineError) return "rejected";
      throw error;
    }
    this.state.polygon = candidate;
    this.state.invariants = x;
    await this.refreshClassification();
    return "accepted";
  }

  /**
   * One map step.  k = 3 drives the coordinate formula (the production
   * path); other k step the polygon geometrically.  Appends the projected
   * point of the new state to the scatter.
   */
  async stepMap(direction: "forward" | "backward"): Promise<void> {
    if (!this.state.polygon || !this.state.invariants) {
      throw new EngineError("no polygon loaded");
    }
    const payload =
      this.state.k === 3
        ? { x: this.state.invariants, direction }
        : { polygon: this.state.polygon, k: this.state.k, direction };
    const result = await this.client.call("step", payload);
    this.state.polygon = expectPolygon(result.polygon);
    if (!Array.isArray(result.x) || !result.x.every((v) => Number.isFinite(v))) {
      throw new EngineError("malformed step payload");
    }
    this.state.invariants = result.x as number[];
    this.state.stepCount += direction === "forward" ? 1 : -1;
    await this.refreshClassification();
    if (this.state.overlays.scatter) {
      await this.appendProjection();
    }
  }

  /** Projection point of the current state (chart of the orbit figure). */
  async appendProjection(): Promise<void> {
    if (!this.state.invariants) return;
    const payload = await this.client.call("project", {
      x: this.state.invariants,
      steps: 0,
    });
    if (!isProjectionPayload(payload)) throw new EngineError("malformed projection");
    const point = payload.points[0];
    if (point) this.state.scatter.push([point[1], point[2]]);
  }

  /** Projected tail of the orbit from the current state. */
  async projectOrbit(steps: number): Promise<[number, number][]> {
    if (!this.state.invariants) throw new EngineError("no invariants loaded");
    const payload = await this.client.call("project", {
      x: this.state.invariants,
      steps,
    });
    if (!isProjectionPayload(payload)) throw new EngineError("malformed projection");
    return payload.points.map(([, px, py]) => [px, py]);
  }

  async refreshClassification(): Promise<void> {
    if (!this.state.invariants) return;
    const payload = await this.client.call("classify", {
      n: this.state.n,
      x: this.state.invariants,
      k: this.state.k,
    });
    if (!isClassifyPayload(payload)) throw new EngineError("malformed classify payload");
    this.state.classification = payload;
  }
}
