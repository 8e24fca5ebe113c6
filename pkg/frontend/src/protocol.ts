/**
 * Engine protocol v1: newline-delimited JSON, one request and one response
 * per line.  The engine is stateless per request; all session state lives in
 * the client.
 */

export const PROTOCOL_VERSION = 1;

export type EngineOp =
  | "sample"
  | "reconstruct"
  | "invariants"
  | "step"
  | "classify"
  | "project";

export interface EngineRequest {
  v: typeof PROTOCOL_VERSION;
  op: EngineOp;
  payload: Record<string, unknown>;
}

export interface EngineOk {
  v: typeof PROTOCOL_VERSION;
  ok: true;
  payload: Record<string, unknown>;
}

export interface EngineErr {
  v: typeof PROTOCOL_VERSION;
  ok: false;
  error: string;
}

export type EngineResponse = EngineOk | EngineErr;

/** Serialized polygon: one period of vertices plus the monodromy matrix. */
export interface PolygonJson {
  n: number;
  vertices: number[][];
  monodromy: number[];
}

export interface GridJson {
  even: string;
  odd: string;
}

export interface SpiralJson {
  k: number;
  type: "alpha" | "beta" | "none";
  window_start: number;
  window_length: number;
  failures: [number, string][];
}

export interface ClassifyJson {
  grid: GridJson;
  spiral: SpiralJson | null;
}

export function makeRequest(op: EngineOp, payload: Record<string, unknown>): EngineRequest {
  return { v: PROTOCOL_VERSION, op, payload };
}

function isRecord(value: unknown): value is Record<string, unknown> {
  return typeof value === "object" && value !== null && !Array.isArray(value);
}

export function isEngineResponse(value: unknown): value is EngineResponse {
  if (!isRecord(value) || value.v !== PROTOCOL_VERSION) return false;
  if (value.ok === true) return isRecord(value.payload);
  if (value.ok === false) return typeof value.error === "string";
  return false;
}

export function isPolygonJson(value: unknown): value is PolygonJson {
  if (!isRecord(value)) return false;
  const { n, vertices, monodromy } = value as Partial<PolygonJson>;
  return (
    typeof n === "number" &&
    Array.isArray(vertices) &&
    vertices.length === n &&
    vertices.every((v) => Array.isArray(v) && v.length === 3 && v.every(Number.isFinite)) &&
    Array.isArray(monodromy) &&
    monodromy.length === 9 &&
    monodromy.every(Number.isFinite)
  );
}

export function isInvariantsPayload(value: unknown): value is { n: number; x: number[] } {
  if (!isRecord(value)) return false;
  const { n, x } = value as { n?: unknown; x?: unknown };
  return (
    typeof n === "number" &&
    Array.isArray(x) &&
    x.length === 2 * n &&
    x.every((v) => typeof v === "number" && Number.isFinite(v))
  );
}

export function isClassifyPayload(value: unknown): value is ClassifyJson {
  if (!isRecord(value) || !isRecord(value.grid)) return false;
  const grid = value.grid as Partial<GridJson>;
  if (typeof grid.even !== "string" || typeof grid.odd !== "string") return false;
  const spiral = (value as { spiral?: unknown }).spiral;
  if (spiral === null || spiral === undefined) return true;
  if (!isRecord(spiral)) return false;
  const s = spiral as Partial<SpiralJson>;
  return (
    typeof s.k === "number" &&
    (s.type === "alpha" || s.type === "beta" || s.type === "none") &&
    typeof s.window_start === "number" &&
    typeof s.window_length === "number" &&
    Array.isArray(s.failures)
  );
}

export function isProjectionPayload(
  value: unknown,
): value is { points: [number, number, number][] } {
  if (!isRecord(value) || !Array.isArray(value.points)) return false;
  return (value.points as unknown[]).every(
    (p) => Array.isArray(p) && p.length === 3 && p.every(Number.isFinite),
  );
}
