"""Newline-delimited JSON engine protocol for the interactive explorer.

One request per line, one response per line.  Requests carry a protocol
version, an op name, and an op-specific payload:

    {"v": 1, "op": "invariants", "payload": {"polygon": {...}}}

Responses mirror the version and report either a payload or an error:

    {"v": 1, "ok": true, "payload": {...}}
    {"v": 1, "ok": false, "error": "..."}

The engine is stateless per request; session state lives in the client.
"""

from __future__ import annotations

import json
import socketserver
import threading

from .classification import grid_classify, spiral_window_check
from .dynamics import t3_coords_forward, t3_coords_inverse, t_k_forward, t_k_inverse
from .errors import SpiralgramError
from .io import (
    invariants_from_dict,
    invariants_to_dict,
    polygon_from_dict,
    polygon_to_dict,
    projection_to_dict,
)
from .orbits import orbit_projection, sample_in_square
from .polygon import corner_invariants, reconstruct

PROTOCOL_VERSION = 1


def _op_sample(payload):
    x = sample_in_square(payload["square"], int(payload["n"]), int(payload["seed"]))
    return invariants_to_dict(x, seed=int(payload["seed"]))


def _op_reconstruct(payload):
    x = invariants_from_dict(payload)
    return polygon_to_dict(reconstruct(x))


def _op_invariants(payload):
    poly = polygon_from_dict(payload["polygon"])
    return invariants_to_dict(corner_invariants(poly))


def _op_step(payload):
    direction = payload.get("direction", "forward")
    if direction not in ("forward", "backward"):
        raise ValueError(f"unknown direction: {direction!r}")
    k = int(payload.get("k", 3))
    if "x" in payload:
        if k != 3:
            raise ValueError("the coordinate route only exists for k = 3")
        x = invariants_from_dict({"n": len(payload["x"]) // 2, "x": payload["x"]})
        new_x = t3_coords_forward(x) if direction == "forward" else t3_coords_inverse(x)
        return {
            "x": invariants_to_dict(new_x)["x"],
            "polygon": polygon_to_dict(reconstruct(new_x)),
        }
    poly = polygon_from_dict(payload["polygon"])
    image = t_k_forward(poly, k) if direction == "forward" else t_k_inverse(poly, k)
    return {
        "polygon": polygon_to_dict(image),
        "x": invariants_to_dict(corner_invariants(image))["x"],
    }


def _op_classify(payload):
    if "polygon" in payload:
        poly = polygon_from_dict(payload["polygon"])
        x = corner_invariants(poly)
    else:
        x = invariants_from_dict(payload)
        poly = reconstruct(x) if x.is_generic() else None
    out = {"grid": grid_classify(x).to_json(), "spiral": None}
    if poly is not None:
        k = int(payload.get("k", 3))
        start = int(payload.get("window_start", 0))
        horizon = payload.get("horizon")
        report = spiral_window_check(
            poly, k, start, None if horizon is None else int(horizon)
        )
        out["spiral"] = report.to_json()
    return out


def _op_project(payload):
    x = invariants_from_dict({"n": len(payload["x"]) // 2, "x": payload["x"]})
    points = orbit_projection(
        x, int(payload["steps"]), payload.get("direction", "forward")
    )
    return projection_to_dict(points)


_OPS = {
    "sample": _op_sample,
    "reconstruct": _op_reconstruct,
    "invariants": _op_invariants,
    "step": _op_step,
    "classify": _op_classify,
    "project": _op_project,
}


def handle_request(line: str) -> dict:
    """Process one request line into a response dict (never raises)."""
    try:
        req = json.loads(line)
    except json.JSONDecodeError as exc:
        return {"v": PROTOCOL_VERSION, "ok": False, "error": f"bad json: {exc}"}
    if not isinstance(req, dict):
        return {"v": PROTOCOL_VERSION, "ok": False, "error": "request must be an object"}
    if req.get("v") != PROTOCOL_VERSION:
        return {
            "v": PROTOCOL_VERSION,
            "ok": False,
            "error": f"unsupported protocol version: {req.get('v')!r}",
        }
    op = req.get("op")
    handler = _OPS.get(op)
    if handler is None:
        return {"v": PROTOCOL_VERSION, "ok": False, "error": f"unknown op: {op!r}"}
    payload = req.get("payload", {})
    try:
        result = handler(payload)
    except (SpiralgramError, ValueError, KeyError, TypeError) as exc:
        return {"v": PROTOCOL_VERSION, "ok": False, "error": f"{type(exc).__name__}: {exc}"}
    return {"v": PROTOCOL_VERSION, "ok": True, "payload": result}


class _Handler(socketserver.StreamRequestHandler):
    def handle(self):
        for raw in self.rfile:
            line = raw.decode("utf-8", errors="replace").strip()
            if not line:
                continue
            response = handle_request(line)
            self.wfile.write((json.dumps(response) + "\n").encode("utf-8"))
            self.wfile.flush()


class EngineServer(socketserver.ThreadingTCPServer):
    allow_reuse_address = True
    daemon_threads = True


def serve(host: str = "127.0.0.1", port: int = 0, announce=None):
    """Run the engine protocol server (blocking).  Port 0 picks a free port."""
    server = EngineServer((host, port), _Handler)
    banner = (
        f"engine protocol listening on "
        f"{server.server_address[0]}:{server.server_address[1]}"
    )
    if announce is None:
        print(banner, flush=True)  # parent processes wait for this line
    else:
        announce(banner)
    try:
        server.serve_forever()
    finally:
        server.server_close()


def start_background(host: str = "127.0.0.1", port: int = 0):
    """Start a server on a daemon thread; returns (server, (host, port))."""
    server = EngineServer((host, port), _Handler)
    thread = threading.Thread(target=server.serve_forever, daemon=True)
    thread.start()
    return server, server.server_address
