"""JSON and CSV schemas for polygons, invariants, trajectories, projections.

Floats are written with 17 significant digits so identical runs produce
byte-identical files.  Serialized generic data must be finite: infinity tags
and nulls are rejected at the boundary.
"""

from __future__ import annotations

import json

from .conserved import ConservedQuantities
from .errors import UndefinedQuantity
from .orbits import OrbitTrajectory, Termination
from .polygon import CornerInvariants, TwistedPolygon
from .projective import HomogeneousPoint, ProjectiveTransform
from .scalars import is_finite_scalar


def fmt_float(v) -> str:
    return format(float(v), ".17g")


def polygon_to_dict(polygon: TwistedPolygon) -> dict:
    return {
        "n": polygon.n,
        "vertices": [[float(c) for c in v.coords] for v in polygon.vertices],
        "monodromy": [float(v) for row in polygon.monodromy.matrix for v in row],
    }


def polygon_from_dict(d: dict) -> TwistedPolygon:
    n = int(d["n"])
    verts = d["vertices"]
    mono = d["monodromy"]
    if len(verts) != n:
        raise ValueError("vertex count does not match n")
    if len(mono) != 9:
        raise ValueError("monodromy must have 9 row-major entries")
    points = [HomogeneousPoint(float(x), float(y), float(z)) for x, y, z in verts]
    rows = (tuple(map(float, mono[0:3])),
            tuple(map(float, mono[3:6])),
            tuple(map(float, mono[6:9])))
    return TwistedPolygon(points, ProjectiveTransform(rows))


def invariants_to_dict(x: CornerInvariants, seed=None) -> dict:
    vals = []
    for v in x:
        if v is None or not is_finite_scalar(v):
            raise ValueError("serialized invariants must be finite, non-null")
        vals.append(float(v))
    out = {"n": x.n, "x": vals}
    if seed is not None:
        out["seed"] = int(seed)
    return out


def invariants_from_dict(d: dict) -> CornerInvariants:
    vals = d["x"]
    if any(v is None for v in vals):
        raise ValueError("invariants JSON must not contain nulls")
    x = CornerInvariants([float(v) for v in vals])
    if x.n != int(d["n"]):
        raise ValueError("entry count does not match n")
    return x


def _conserved_floats(c: ConservedQuantities):
    if not c.all_defined():
        raise UndefinedQuantity("trajectory export hit an undefined quantity")
    return [float(v) for v in c.as_tuple()]


def trajectory_csv_lines(trajectory: OrbitTrajectory):
    """Rows 'step,x0..x{2n-1},F1,F2,F3,F4', one per recorded state."""
    m = 2 * trajectory.n
    header = "step," + ",".join(f"x{j}" for j in range(m)) + ",F1,F2,F3,F4"
    yield header
    for step, (state, cons) in enumerate(zip(trajectory.steps, trajectory.conserved)):
        cells = [str(step)]
        cells.extend(fmt_float(v) for v in state)
        cells.extend(fmt_float(v) for v in _conserved_floats(cons))
        yield ",".join(cells)


def write_trajectory_csv(trajectory: OrbitTrajectory, path) -> None:
    with open(path, "w") as fh:
        for line in trajectory_csv_lines(trajectory):
            fh.write(line + "\n")


def trajectory_to_dict(trajectory: OrbitTrajectory) -> dict:
    out = {
        "n": trajectory.n,
        "direction": trajectory.direction,
        "termination": trajectory.termination.to_json(),
        "steps": [
            {
                "step": m,
                "x": [float(v) for v in state],
                "F": _conserved_floats(cons),
            }
            for m, (state, cons) in enumerate(
                zip(trajectory.steps, trajectory.conserved)
            )
        ],
    }
    if trajectory.seed is not None:
        out["seed"] = int(trajectory.seed)
    return out


def projection_csv_lines(points):
    """Rows 'step,px,py' for a list of AffinePoints."""
    yield "step,px,py"
    for step, p in enumerate(points):
        yield f"{step},{fmt_float(p.x)},{fmt_float(p.y)}"


def write_projection_csv(points, path) -> None:
    with open(path, "w") as fh:
        for line in projection_csv_lines(points):
            fh.write(line + "\n")


def projection_to_dict(points, seed=None) -> dict:
    out = {"points": [[i, float(p.x), float(p.y)] for i, p in enumerate(points)]}
    if seed is not None:
        out["seed"] = int(seed)
    return out


def _json_17g(obj, out):
    """Recursive JSON writer with floats at 17 significant digits."""
    if obj is None or obj is True or obj is False:
        out.append(json.dumps(obj))
    elif isinstance(obj, float):
        out.append(fmt_float(obj))
    elif isinstance(obj, int):
        out.append(str(obj))
    elif isinstance(obj, str):
        out.append(json.dumps(obj))
    elif isinstance(obj, dict):
        out.append("{")
        for i, key in enumerate(sorted(obj)):
            if i:
                out.append(",")
            out.append(json.dumps(str(key)) + ":")
            _json_17g(obj[key], out)
        out.append("}")
    elif isinstance(obj, (list, tuple)):
        out.append("[")
        for i, item in enumerate(obj):
            if i:
                out.append(",")
            _json_17g(item, out)
        out.append("]")
    else:
        raise TypeError(f"not JSON-serializable: {type(obj).__name__}")


def json_dumps(obj) -> str:
    out = []
    _json_17g(obj, out)
    return "".join(out)


def dump_json(obj, path) -> None:
    with open(path, "w") as fh:
        fh.write(json_dumps(obj))
        fh.write("\n")
