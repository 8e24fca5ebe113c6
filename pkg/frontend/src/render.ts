/**
 * Canvas drawing for the explorer: the polygon arc with its extension under
 * the monodromy, transversal polylines (vertices k apart), the tic-tac-toe
 * indicator, and the orbit projection scatter.
 */

import { PolygonJson, ClassifyJson } from "./protocol.js";
import { Viewport, affineOf, clipToView, worldToScreen } from "./viewport.js";

export interface Palette {
  polygon: string;
  extension: string;
  vertex: string;
  transversal: string[];
  scatter: string;
  marker: string;
}

export const PALETTE: Palette = {
  polygon: "#1a1a66",
  extension: "#9090c0",
  vertex: "#d04010",
  transversal: ["#0a8040", "#b07800", "#8020a0", "#106090"],
  scatter: "#106090",
  marker: "#b0b0b0",
};

function apply3x3(m: number[], v: number[]): number[] {
  const [x, y, z] = [v[0] ?? 0, v[1] ?? 0, v[2] ?? 0];
  return [
    (m[0] ?? 0) * x + (m[1] ?? 0) * y + (m[2] ?? 0) * z,
    (m[3] ?? 0) * x + (m[4] ?? 0) * y + (m[5] ?? 0) * z,
    (m[6] ?? 0) * x + (m[7] ?? 0) * y + (m[8] ?? 0) * z,
  ];
}

/** Vertices over an index window, extended by monodromy powers. */
export function windowVertices(polygon: PolygonJson, from: number, to: number): number[][] {
  const out: number[][] = [];
  for (let i = from; i < to; i++) {
    const q = Math.floor(i / polygon.n);
    const r = ((i % polygon.n) + polygon.n) % polygon.n;
    let v = polygon.vertices[r] ?? [0, 0, 1];
    if (q > 0) for (let j = 0; j < q; j++) v = apply3x3(polygon.monodromy, v);
    // negative powers are not drawn; the fundamental window suffices
    out.push(v);
  }
  return out;
}

function polyline(
  ctx: CanvasRenderingContext2D,
  view: Viewport,
  pts: number[][],
  color: string,
  width: number,
): void {
  ctx.strokeStyle = color;
  ctx.lineWidth = width;
  ctx.beginPath();
  let drawing = false;
  for (const vertex of pts) {
    const aff = affineOf(vertex);
    if (!aff) {
      drawing = false;
      continue;
    }
    const [sx, sy] = worldToScreen(view, aff[0], aff[1]);
    if (drawing) ctx.lineTo(sx, sy);
    else ctx.moveTo(sx, sy);
    drawing = true;
  }
  ctx.stroke();
}

export function drawPolygon(
  ctx: CanvasRenderingContext2D,
  view: Viewport,
  polygon: PolygonJson,
  periods = 2,
): void {
  polyline(ctx, view, windowVertices(polygon, 0, polygon.n * periods + 1),
           PALETTE.extension, 1);
  polyline(ctx, view, windowVertices(polygon, 0, polygon.n + 1), PALETTE.polygon, 2);
  for (let i = 0; i < polygon.n; i++) {
    const aff = affineOf(polygon.vertices[i] ?? [0, 0, 1]);
    if (!aff) continue;
    const [sx, sy] = worldToScreen(view, aff[0], aff[1]);
    const clip = clipToView(view, sx, sy);
    ctx.fillStyle = clip.inside ? PALETTE.vertex : PALETTE.marker;
    if (clip.inside) {
      ctx.beginPath();
      ctx.arc(sx, sy, 4, 0, 2 * Math.PI);
      ctx.fill();
    } else if (clip.marker) {
      // directional chevron on the boundary for clipped vertices
      const { sx: mx, sy: my, angle } = clip.marker;
      ctx.save();
      ctx.translate(mx, my);
      ctx.rotate(angle);
      ctx.beginPath();
      ctx.moveTo(0, 0);
      ctx.lineTo(-8, 4);
      ctx.lineTo(-8, -4);
      ctx.closePath();
      ctx.fill();
      ctx.restore();
    }
  }
}

export function drawTransversals(
  ctx: CanvasRenderingContext2D,
  view: Viewport,
  polygon: PolygonJson,
  k: number,
  periods = 3,
): void {
  const all = windowVertices(polygon, 0, polygon.n * periods);
  for (let start = 0; start < Math.min(k, PALETTE.transversal.length); start++) {
    const arc: number[][] = [];
    for (let i = start; i < all.length; i += k) arc.push(all[i] ?? [0, 0, 1]);
    polyline(ctx, view, arc, PALETTE.transversal[start % PALETTE.transversal.length] ?? "#000", 1);
  }
}

export function drawScatter(
  ctx: CanvasRenderingContext2D,
  view: Viewport,
  points: [number, number][],
): void {
  ctx.fillStyle = PALETTE.scatter;
  for (const [x, y] of points) {
    const [sx, sy] = worldToScreen(view, x, y);
    if (clipToView(view, sx, sy).inside) ctx.fillRect(sx - 1, sy - 1, 2, 2);
  }
}

/** 3x3 indicator; returns the highlighted cell for the current verdict. */
export function gridIndicatorCell(classification: ClassifyJson | null): [number, number] | null {
  if (!classification) return null;
  const order: Record<string, number> = { I: 0, J: 1, K: 2 };
  const even = order[classification.grid.even];
  const odd = order[classification.grid.odd];
  if (even === undefined || odd === undefined) return null;
  return [even, odd];
}
