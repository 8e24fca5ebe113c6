"""Command-line front end: gen, orbit, classify, verify, project, serve.

Every run that draws randomness flows through --seed; when the flag is
omitted a fresh seed is drawn and printed so the run can be reproduced.
SPIRALGRAM_MODE (float | rational) supplies the default arithmetic mode.
"""

from __future__ import annotations

import argparse
import json
import os
import secrets
import sys
from fractions import Fraction

from . import server as engine_server
from .classification import grid_classify, spiral_window_check
from .conserved import f_invariants, invariant_drift
from .dynamics import (
    Labeling,
    t3_coords_forward,
    t3_coords_inverse,
    t_k_forward,
)
from .errors import SpiralgramError
from .io import (
    dump_json,
    invariants_from_dict,
    invariants_to_dict,
    polygon_from_dict,
    polygon_to_dict,
    projection_to_dict,
    trajectory_to_dict,
    write_projection_csv,
    write_trajectory_csv,
)
from .orbits import (
    SIDE_SQUARES,
    iterate,
    orbit_projection,
    sample_in_square,
)
from .polygon import CornerInvariants, corner_invariants, reconstruct

_MODES = ("float", "rational")


def _default_mode() -> str:
    mode = os.environ.get("SPIRALGRAM_MODE", "float")
    return mode if mode in _MODES else "float"


def _resolve_seed(seed) -> int:
    if seed is not None:
        return int(seed)
    drawn = secrets.randbits(63)
    print(f"seed: {drawn}")
    return drawn


def _load_json(path) -> dict:
    with open(path) as fh:
        return json.load(fh)


def _load_invariants(path) -> CornerInvariants:
    data = _load_json(path)
    if "vertices" in data:
        return corner_invariants(polygon_from_dict(data))
    return invariants_from_dict(data)


def _cmd_gen(args) -> int:
    seed = _resolve_seed(args.seed)
    x = sample_in_square(args.square, args.n, seed, mode=args.mode)
    payload = invariants_to_dict(x, seed=seed)
    if args.out:
        dump_json(payload, args.out)
    else:
        json.dump(payload, sys.stdout)
        print()
    return 0


def _cmd_orbit(args) -> int:
    x = _load_invariants(getattr(args, "in"))
    traj = iterate(x, args.steps, args.direction)
    if traj.termination.kind == "singular":
        print(
            f"orbit hit a singular point at step {traj.termination.step} "
            f"(slot {traj.termination.index}); recorded {len(traj.steps)} states"
        )
    if args.out.endswith(".json"):
        dump_json(trajectory_to_dict(traj), args.out)
    else:
        write_trajectory_csv(traj, args.out)
    return 0


def _cmd_classify(args) -> int:
    data = _load_json(getattr(args, "in"))
    if "vertices" in data:
        poly = polygon_from_dict(data)
        x = corner_invariants(poly)
    else:
        x = invariants_from_dict(data)
        poly = reconstruct(x) if x.is_generic() else None
    report = {"grid": grid_classify(x).to_json(), "spiral": None}
    if poly is not None:
        spiral = spiral_window_check(poly, args.k, args.window_start, args.horizon)
        report["spiral"] = spiral.to_json()
    if args.out:
        dump_json(report, args.out)
    else:
        json.dump(report, sys.stdout)
        print()
    return 0


def _cmd_project(args) -> int:
    x = _load_invariants(getattr(args, "in"))
    points = orbit_projection(x, args.steps, args.direction)
    write_projection_csv(points, args.out)
    return 0


def _sample_generic(square, n, seed, mode):
    x = sample_in_square(square, n, seed, mode="float")
    if mode == "rational":
        return CornerInvariants([Fraction(v).limit_denominator(1 << 20) for v in x])
    return x


def _check(name, ok, detail=""):
    status = "PASS" if ok else "FAIL"
    print(f"{status} {name}{(': ' + detail) if detail else ''}")
    return ok


def _cmd_verify(args) -> int:
    mode = args.mode
    seed = _resolve_seed(args.seed)
    n = args.n
    squares = SIDE_SQUARES + ("JJ",)
    all_ok = True
    if mode == "rational":
        inv_ok = roundtrip_ok = 0
        total = 0
        for t in range(args.trials):
            x = _sample_generic(squares[t % len(squares)], n, seed + t, mode)
            try:
                y = t3_coords_forward(x)
                z = t3_coords_inverse(y)
                back = t3_coords_forward(t3_coords_inverse(x))
            except SpiralgramError:
                continue
            total += 1
            same_f = (
                f_invariants(x).as_tuple() == f_invariants(y).as_tuple()
                == f_invariants(t3_coords_inverse(x)).as_tuple()
            )
            inv_ok += same_f
            roundtrip_ok += (z == x and back == x)
        all_ok &= _check(
            "exact F1..F4 invariance (forward and inverse)",
            inv_ok == total and total > 0,
            f"{inv_ok}/{total}",
        )
        all_ok &= _check(
            "exact mutual inverse of the coordinate maps",
            roundtrip_ok == total and total > 0,
            f"{roundtrip_ok}/{total}",
        )
    else:
        rt_ok = drift_ok = rec_ok = geo_ok = 0
        total = 0
        for t in range(args.trials):
            x = sample_in_square(squares[t % len(squares)], n, seed + t)
            try:
                y = t3_coords_forward(x)
                z = t3_coords_inverse(y)
            except SpiralgramError:
                continue
            total += 1
            rt_ok += max(abs(a - b) for a, b in zip(x, z)) <= 1e-10
            fx = f_invariants(x).as_tuple()
            fy = f_invariants(y).as_tuple()
            drift_ok += all(
                abs(a - b) <= 1e-9 * max(abs(a), 1e-300) for a, b in zip(fx, fy)
            )
            try:
                poly = reconstruct(x)
                xm = corner_invariants(poly)
                rec_ok += max(abs(a - b) for a, b in zip(x, xm)) <= 1e-8
                geo = corner_invariants(t_k_forward(poly, 3, Labeling.CENTERED_3))
                geo_ok += max(abs(a - b) for a, b in zip(geo, y)) <= 1e-8
            except SpiralgramError:
                continue
        all_ok &= _check("inverse roundtrip <= 1e-10", rt_ok == total and total > 0,
                         f"{rt_ok}/{total}")
        all_ok &= _check("one-step invariant drift <= 1e-9", drift_ok == total,
                         f"{drift_ok}/{total}")
        all_ok &= _check("reconstruction roundtrip <= 1e-8", rec_ok == total,
                         f"{rec_ok}/{total}")
        all_ok &= _check("geometric/coordinate agreement <= 1e-8", geo_ok == total,
                         f"{geo_ok}/{total}")
    return 0 if all_ok else 1


def _cmd_serve(args) -> int:
    if args.ui:
        import functools
        import http.server
        import threading

        root = args.ui_root
        if not os.path.isdir(root):
            print(f"ui root not found: {root}", file=sys.stderr)
            return 2
        handler = functools.partial(
            http.server.SimpleHTTPRequestHandler, directory=root
        )
        httpd = http.server.ThreadingHTTPServer((args.host, args.ui_port), handler)
        threading.Thread(target=httpd.serve_forever, daemon=True).start()
        print(f"ui assets on http://{args.host}:{httpd.server_address[1]}/")
    engine_server.serve(args.host, args.port)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="spiralgram",
        description="Deep diagonal maps on twisted polygons: generate, iterate, "
        "classify, verify, project, serve.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="sample corner invariants in a grid square")
    p.add_argument("--square", required=True,
                   choices=("IJ", "KJ", "JI", "JK", "JJ"))
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int)
    p.add_argument("--mode", choices=_MODES, default=_default_mode())
    p.add_argument("--out")
    p.set_defaults(fn=_cmd_gen)

    p = sub.add_parser("orbit", help="iterate the T3 coordinate map")
    p.add_argument("--in", required=True, help="invariants or polygon JSON")
    p.add_argument("--steps", type=int, required=True)
    p.add_argument("--direction", choices=("forward", "backward"), default="forward")
    p.add_argument("--out", required=True, help=".csv or .json")
    p.set_defaults(fn=_cmd_orbit)

    p = sub.add_parser("classify", help="grid square and spiral window verdicts")
    p.add_argument("--in", required=True)
    p.add_argument("--k", type=int, default=3)
    p.add_argument("--window-start", type=int, default=0)
    p.add_argument("--horizon", type=int, default=None)
    p.add_argument("--out")
    p.set_defaults(fn=_cmd_classify)

    p = sub.add_parser("verify", help="roundtrip and invariance property suites")
    p.add_argument("--n", type=int, default=5)
    p.add_argument("--mode", choices=_MODES, default=_default_mode())
    p.add_argument("--trials", type=int, default=50)
    p.add_argument("--seed", type=int)
    p.set_defaults(fn=_cmd_verify)

    p = sub.add_parser("project", help="orbit projection chart as CSV")
    p.add_argument("--in", required=True)
    p.add_argument("--steps", type=int, required=True)
    p.add_argument("--direction", choices=("forward", "backward"), default="forward")
    p.add_argument("--out", required=True)
    p.set_defaults(fn=_cmd_project)

    p = sub.add_parser("serve", help="run the engine protocol endpoint")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=0)
    p.add_argument("--ui", action="store_true", help="also serve explorer assets")
    p.add_argument("--ui-root", default="frontend/dist")
    p.add_argument("--ui-port", type=int, default=0)
    p.set_defaults(fn=_cmd_serve)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (SpiralgramError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
