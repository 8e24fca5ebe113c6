/**
 * Browser entry: canvas explorer wired to an engine over a line transport.
 *
 * The page expects an NDJSON WebSocket bridge URL in the `engine` query
 * parameter (e.g. ?engine=ws://127.0.0.1:8766); any bridge that relays lines
 * to `spiralgram serve` verbatim works, as would an in-page engine exposing
 * the same transport interface.
 */

import { EngineClient, connectWebSocket } from "./client.js";
import { ExplorerSession } from "./session.js";
import { drawPolygon, drawScatter, drawTransversals, gridIndicatorCell } from "./render.js";
import { Viewport, defaultViewport, pan, screenToWorld, worldToScreen, zoomAt } from "./viewport.js";
import { affineOf } from "./viewport.js";

interface Ui {
  canvas: HTMLCanvasElement;
  status: HTMLElement;
  grid: HTMLElement;
}

function findUi(): Ui | null {
  const canvas = document.getElementById("view");
  const status = document.getElementById("status");
  const grid = document.getElementById("grid");
  if (!(canvas instanceof HTMLCanvasElement) || !status || !grid) return null;
  return { canvas, status, grid };
}

function describe(session: ExplorerSession): string {
  const s = session.state;
  const grid = s.classification?.grid;
  const spiral = s.classification?.spiral;
  return [
    `n=${s.n}`,
    `k=${s.k}`,
    `step=${s.stepCount}`,
    grid ? `square=(${grid.even},${grid.odd})` : "",
    spiral ? `spiral=${spiral.type}` : "",
  ]
    .filter(Boolean)
    .join("  ");
}

function renderGridIndicator(el: HTMLElement, session: ExplorerSession): void {
  const cell = gridIndicatorCell(session.state.classification);
  const rows: string[] = [];
  for (let odd = 2; odd >= 0; odd--) {
    const cells: string[] = [];
    for (let even = 0; even < 3; even++) {
      const hit = cell && cell[0] === even && cell[1] === odd;
      cells.push(hit ? "■" : "·");
    }
    rows.push(cells.join(" "));
  }
  el.textContent = rows.join("\n");
}

async function boot(): Promise<void> {
  const ui = findUi();
  if (!ui) return;
  const ctx = ui.canvas.getContext("2d");
  if (!ctx) return;

  const url = new URLSearchParams(location.search).get("engine");
  if (!url) {
    ui.status.textContent =
      "no engine bridge: open with ?engine=ws://host:port (NDJSON relay to `spiralgram serve`)";
    return;
  }
  const client = new EngineClient(connectWebSocket(url));
  const session = new ExplorerSession(client);
  let view: Viewport = defaultViewport(ui.canvas.width, ui.canvas.height);
  let dragging: { vertex: number } | { pan: [number, number] } | null = null;

  const redraw = () => {
    ctx.clearRect(0, 0, ui.canvas.width, ui.canvas.height);
    const s = session.state;
    if (s.polygon) {
      if (s.overlays.transversals) drawTransversals(ctx, view, s.polygon, s.k);
      drawPolygon(ctx, view, s.polygon);
    }
    if (s.overlays.scatter) drawScatter(ctx, view, s.scatter);
    ui.status.textContent = describe(session);
    renderGridIndicator(ui.grid, session);
  };

  const vertexAt = (sx: number, sy: number): number | null => {
    const poly = session.state.polygon;
    if (!poly) return null;
    for (let i = 0; i < poly.n; i++) {
      const aff = affineOf(poly.vertices[i] ?? [0, 0, 1]);
      if (!aff) continue;
      const [vx, vy] = worldToScreen(view, aff[0], aff[1]);
      if ((vx - sx) ** 2 + (vy - sy) ** 2 < 100) return i;
    }
    return null;
  };

  ui.canvas.addEventListener("mousedown", (e) => {
    const hit = vertexAt(e.offsetX, e.offsetY);
    dragging = hit !== null ? { vertex: hit } : { pan: [e.offsetX, e.offsetY] };
  });
  ui.canvas.addEventListener("mousemove", (e) => {
    if (!dragging) return;
    if ("pan" in dragging) {
      view = pan(view, e.offsetX - dragging.pan[0], e.offsetY - dragging.pan[1]);
      dragging.pan = [e.offsetX, e.offsetY];
      redraw();
    }
  });
  ui.canvas.addEventListener("mouseup", (e) => {
    void (async () => {
      if (dragging && "vertex" in dragging) {
        const target = screenToWorld(view, e.offsetX, e.offsetY);
        const outcome = await session.dragVertex(dragging.vertex, target);
        if (outcome === "rejected") {
          ui.status.textContent = "edit rejected (degenerate position)";
        }
        redraw();
      }
      dragging = null;
    })();
  });
  ui.canvas.addEventListener("wheel", (e) => {
    e.preventDefault();
    view = zoomAt(view, e.offsetX, e.offsetY, e.deltaY < 0 ? 1.15 : 1 / 1.15);
    redraw();
  });

  window.addEventListener("keydown", (e) => {
    void (async () => {
      try {
        if (e.key === "f") await session.stepMap("forward");
        else if (e.key === "b") await session.stepMap("backward");
        else if (e.key === "t") session.toggleOverlay("transversals");
        else if (e.key === "s") session.toggleOverlay("scatter");
        else return;
        redraw();
      } catch (error) {
        ui.status.textContent = `step failed: ${(error as Error).message}`;
      }
    })();
  });

  await session.loadSample("KJ", 8, Math.floor(Math.random() * 2 ** 31));
  redraw();
}

if (typeof document !== "undefined") {
  void boot();
}
