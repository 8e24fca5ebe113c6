/**
 * Affine-patch viewport: world <-> screen mapping with pan/zoom, and
 * clipping of off-screen vertices to boundary markers that point at them.
 */

export interface Viewport {
  /** World coordinates of the screen center. */
  cx: number;
  cy: number;
  /** Pixels per world unit. */
  scale: number;
  width: number;
  height: number;
}

export function defaultViewport(width: number, height: number): Viewport {
  return { cx: 0.5, cy: 0.5, scale: Math.min(width, height) / 4, width, height };
}

export function worldToScreen(v: Viewport, x: number, y: number): [number, number] {
  return [
    v.width / 2 + (x - v.cx) * v.scale,
    v.height / 2 - (y - v.cy) * v.scale,
  ];
}

export function screenToWorld(v: Viewport, sx: number, sy: number): [number, number] {
  return [
    v.cx + (sx - v.width / 2) / v.scale,
    v.cy - (sy - v.height / 2) / v.scale,
  ];
}

export function pan(v: Viewport, dxPixels: number, dyPixels: number): Viewport {
  return { ...v, cx: v.cx - dxPixels / v.scale, cy: v.cy + dyPixels / v.scale };
}

/** Zoom by `factor` keeping the world point under (sx, sy) fixed. */
export function zoomAt(v: Viewport, sx: number, sy: number, factor: number): Viewport {
  const [wx, wy] = screenToWorld(v, sx, sy);
  const scale = v.scale * factor;
  const cx = wx - (sx - v.width / 2) / scale;
  const cy = wy + (sy - v.height / 2) / scale;
  return { ...v, cx, cy, scale };
}

export interface ClipResult {
  inside: boolean;
  /** Marker position on the view edge and the outward angle, when outside. */
  marker?: { sx: number; sy: number; angle: number };
}

/**
 * Clip a screen-space point to the view rectangle (with a small inset).
 * Off-screen points become directional markers on the boundary.
 */
export function clipToView(v: Viewport, sx: number, sy: number, inset = 12): ClipResult {
  if (sx >= 0 && sx <= v.width && sy >= 0 && sy <= v.height) {
    return { inside: true };
  }
  const cx = v.width / 2;
  const cy = v.height / 2;
  const dx = sx - cx;
  const dy = sy - cy;
  const halfW = v.width / 2 - inset;
  const halfH = v.height / 2 - inset;
  const t = Math.min(
    dx !== 0 ? Math.abs(halfW / dx) : Infinity,
    dy !== 0 ? Math.abs(halfH / dy) : Infinity,
  );
  return {
    inside: false,
    marker: { sx: cx + dx * t, sy: cy + dy * t, angle: Math.atan2(dy, dx) },
  };
}

/** Affine coordinates of a homogeneous vertex, or null near infinity. */
export function affineOf(vertex: number[], tol = 1e-9): [number, number] | null {
  const [x, y, z] = vertex;
  if (x === undefined || y === undefined || z === undefined) return null;
  const m = Math.max(Math.abs(x), Math.abs(y), Math.abs(z));
  if (m === 0 || Math.abs(z) <= tol * m) return null;
  return [x / z, y / z];
}
