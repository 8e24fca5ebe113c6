"""The newline-delimited JSON engine protocol."""

import json
import socket

import pytest

from spiralgram.server import handle_request, start_background


def rpc_line(op, payload):
    return json.dumps({"v": 1, "op": op, "payload": payload})


class TestHandleRequest:
    def test_sample_and_reconstruct(self):
        r = handle_request(rpc_line("sample", {"square": "KJ", "n": 4, "seed": 42}))
        assert r["v"] == 1 and r["ok"]
        x = r["payload"]["x"]
        assert len(x) == 8 and r["payload"]["seed"] == 42
        r2 = handle_request(rpc_line("reconstruct", {"n": 4, "x": x}))
        assert r2["ok"] and len(r2["payload"]["vertices"]) == 4

    def test_invariants_inverts_reconstruct(self):
        x = handle_request(rpc_line("sample", {"square": "JI", "n": 5, "seed": 7}))[
            "payload"
        ]["x"]
        poly = handle_request(rpc_line("reconstruct", {"n": 5, "x": x}))["payload"]
        back = handle_request(rpc_line("invariants", {"polygon": poly}))["payload"]["x"]
        assert max(abs(a - b) for a, b in zip(x, back)) < 1e-9

    def test_step_coordinate_route_matches_library(self):
        from spiralgram import CornerInvariants, t3_coords_forward

        x = handle_request(rpc_line("sample", {"square": "KJ", "n": 4, "seed": 3}))[
            "payload"
        ]["x"]
        r = handle_request(rpc_line("step", {"x": x, "direction": "forward"}))
        assert r["ok"]
        expected = t3_coords_forward(CornerInvariants(x))
        assert max(abs(a - b) for a, b in zip(r["payload"]["x"], expected)) < 1e-15
        assert "polygon" in r["payload"]

    def test_step_geometric_route(self):
        x = handle_request(rpc_line("sample", {"square": "KJ", "n": 5, "seed": 9}))[
            "payload"
        ]["x"]
        poly = handle_request(rpc_line("reconstruct", {"n": 5, "x": x}))["payload"]
        r = handle_request(rpc_line("step", {"polygon": poly, "k": 4}))
        assert r["ok"] and len(r["payload"]["polygon"]["vertices"]) == 5

    def test_classify(self):
        x = handle_request(rpc_line("sample", {"square": "KJ", "n": 4, "seed": 42}))[
            "payload"
        ]["x"]
        r = handle_request(rpc_line("classify", {"n": 4, "x": x}))
        assert r["payload"]["grid"] == {"even": "K", "odd": "J"}
        assert r["payload"]["spiral"]["type"] == "beta"

    def test_degenerate_polygon_edit_is_rejected(self):
        # a vertex dragged onto the line of its neighbors must error,
        # signalling the UI to snap the vertex back
        x = handle_request(rpc_line("sample", {"square": "KJ", "n": 4, "seed": 42}))[
            "payload"
        ]["x"]
        poly = handle_request(rpc_line("reconstruct", {"n": 4, "x": x}))["payload"]
        v0, v1 = poly["vertices"][0], poly["vertices"][1]
        midpoint = [(a + b) / 2 for a, b in zip(v0, v1)]
        poly["vertices"][2] = midpoint
        r = handle_request(rpc_line("invariants", {"polygon": poly}))
        assert not r["ok"] and "error" in r

    def test_wrong_version_rejected(self):
        r = handle_request(json.dumps({"v": 2, "op": "sample", "payload": {}}))
        assert not r["ok"] and "version" in r["error"]

    def test_unknown_op_rejected(self):
        r = handle_request(rpc_line("explode", {}))
        assert not r["ok"] and "unknown op" in r["error"]

    def test_bad_json_rejected(self):
        r = handle_request("{oops")
        assert not r["ok"] and r["v"] == 1

    def test_singular_step_errors_cleanly(self):
        r = handle_request(rpc_line("step", {"x": [0.5] * 8}))
        assert not r["ok"] and "SingularOrbitPoint" in r["error"]


class TestSocketServer:
    @pytest.fixture
    def conn(self):
        server, (host, port) = start_background()
        sock = socket.create_connection((host, port), timeout=10)
        fh = sock.makefile("rw")
        yield fh
        sock.close()
        server.shutdown()
        server.server_close()

    def _rpc(self, fh, op, payload):
        fh.write(rpc_line(op, payload) + "\n")
        fh.flush()
        return json.loads(fh.readline())

    def test_ops_roundtrip_over_socket(self, conn):
        r = self._rpc(conn, "sample", {"square": "IJ", "n": 4, "seed": 8})
        assert r["ok"]
        x = r["payload"]["x"]
        r = self._rpc(conn, "project", {"x": x, "steps": 4})
        assert r["ok"] and len(r["payload"]["points"]) == 5
        r = self._rpc(conn, "classify", {"n": 4, "x": x})
        assert r["ok"] and r["payload"]["grid"] == {"even": "I", "odd": "J"}

    def test_scripted_session_matches_headless_projection(self, conn, tmp_path):
        """Drag (and drag back), step twice, project: the session's points must
        reproduce the tail of the CLI projection for the same seed."""
        from spiralgram.cli import main

        seed, n, steps = 42, 4, 12
        # headless route
        p = tmp_path / "p.json"
        proj = tmp_path / "proj.csv"
        assert main(["gen", "--square", "KJ", "--n", str(n), "--seed", str(seed),
                     "--out", str(p)]) == 0
        assert main(["project", "--in", str(p), "--steps", str(steps),
                     "--out", str(proj)]) == 0
        rows = [line.split(",") for line in proj.read_text().splitlines()[1:]]
        cli_points = [(float(r[1]), float(r[2])) for r in rows]

        # interactive session: sample, reconstruct, drag a vertex away and back,
        # step the map twice, then project the remaining steps
        r = self._rpc(conn, "sample", {"square": "KJ", "n": n, "seed": seed})
        x = r["payload"]["x"]
        poly = self._rpc(conn, "reconstruct", {"n": n, "x": x})["payload"]
        original = list(poly["vertices"][2])
        dx = 0.3 * original[2]  # shift the affine x-position
        poly["vertices"][2] = [original[0] + dx, original[1], original[2]]
        dragged = self._rpc(conn, "invariants", {"polygon": poly})
        assert dragged["ok"] and any(
            abs(a - b) > 1e-6 for a, b in zip(dragged["payload"]["x"], x)
        )
        poly["vertices"][2] = original
        restored = self._rpc(conn, "invariants", {"polygon": poly})["payload"]["x"]
        assert max(abs(a - b) for a, b in zip(restored, x)) < 1e-12

        state = x
        for _ in range(2):
            state = self._rpc(conn, "step", {"x": state, "direction": "forward"})[
                "payload"
            ]["x"]
        session = self._rpc(conn, "project", {"x": state, "steps": steps - 2})[
            "payload"
        ]["points"]
        for (sx, sy), (cx, cy) in zip(
            [(px, py) for _, px, py in session], cli_points[2:]
        ):
            assert abs(sx - cx) <= 1e-9 and abs(sy - cy) <= 1e-9
