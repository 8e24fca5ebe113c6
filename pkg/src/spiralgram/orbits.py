"""Orbit iteration, sampling, boundedness diagnostics, and projection.

Orbits run in corner-invariant coordinates (the birational T_3 formula);
geometry is only rebuilt when projecting a state for display.  Singular
encounters terminate a trajectory with recorded state instead of raising:
the map is defined away from a measure-zero set, so random sampling is
expected to brush it occasionally.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .classification import GridSquare, grid_classify, spiral_window_check
from .conserved import ConservedQuantities, f_invariants
from .dynamics import t3_coords_forward, t3_coords_inverse
from .errors import (
    BoundViolation,
    DegenerateConfiguration,
    DegenerateInput,
    DegenerateInvariants,
    DegeneratePosition,
    MonodromyFailure,
    NonAffineVertex,
    NotKNice,
    ProjectionFailure,
    SingularOrbitPoint,
)
from .polygon import (
    CornerInvariants,
    SEED_UNIT_SQUARE,
    TwistedPolygon,
    reconstruct,
)
from .projective import (
    AffinePoint,
    HomogeneousPoint,
    ProjectiveTransform,
    transform_from_correspondence,
)

# Bounded open sub-ranges used when drawing coordinates from I, J, K.
SAMPLE_RANGES = {"I": (-5.0, -0.1), "J": (0.05, 0.95), "K": (1.1, 6.0)}
SIDE_SQUARES = ("IJ", "KJ", "JI", "JK")
# Denominator for rational-mode draws (dyadic rationals inside the range).
_RATIONAL_DENOM = 1 << 20


@dataclass(frozen=True)
class Termination:
    kind: str  # "completed" | "singular"
    step: int | None = None
    index: int | None = None

    def completed(self) -> bool:
        return self.kind == "completed"

    def to_json(self) -> dict:
        out = {"kind": self.kind}
        if self.kind == "singular":
            out["step"] = self.step
            out["index"] = self.index
        return out


@dataclass
class OrbitTrajectory:
    """Recorded orbit states plus per-step diagnostics."""

    steps: list  # list[CornerInvariants], steps[0] = start state
    direction: str  # "forward" | "backward"
    conserved: list  # list[ConservedQuantities]
    running_min: list  # list[tuple], elementwise min over steps so far
    running_max: list
    termination: Termination
    seed: int | None = None

    @property
    def n(self) -> int:
        return self.steps[0].n


@dataclass(frozen=True)
class BoundsReport:
    """Observed per-parity coordinate ranges of a completed trajectory."""

    odd_bounds: tuple
    even_bounds: tuple
    square: GridSquare
    margins: dict

    def to_json(self) -> dict:
        return {
            "odd_bounds": [float(v) for v in self.odd_bounds],
            "even_bounds": [float(v) for v in self.even_bounds],
            "square": self.square.to_json(),
            "margins": {k: float(v) for k, v in self.margins.items()},
        }


def _square_label(square) -> str:
    if isinstance(square, GridSquare):
        return square.label()
    if isinstance(square, (tuple, list)):
        return "".join(square)
    return str(square)


def sample_in_square(square, n: int, rng_seed: int,
                     mode: str = "float") -> CornerInvariants:
    """Draw a 2n-tuple with even entries in the first interval and odd in the
    second; deterministic in the seed.  Rational mode snaps draws to dyadic
    rationals strictly inside the (open) ranges."""
    label = _square_label(square)
    if len(label) != 2 or any(c not in SAMPLE_RANGES for c in label):
        raise ValueError(f"not a sampleable square: {square!r}")
    rng = np.random.default_rng(rng_seed)
    evens = rng.uniform(*SAMPLE_RANGES[label[0]], size=n)
    odds = rng.uniform(*SAMPLE_RANGES[label[1]], size=n)
    out = []
    for e, o in zip(evens, odds):
        out.extend((float(e), float(o)))
    if mode == "rational":
        out = [Fraction(round(v * _RATIONAL_DENOM), _RATIONAL_DENOM) for v in out]
    elif mode != "float":
        raise ValueError(f"unknown mode: {mode!r}")
    return CornerInvariants(out)


def iterate(x0: CornerInvariants, steps: int,
            direction: str = "forward", seed: int | None = None) -> OrbitTrajectory:
    """Apply the T_3 coordinate map `steps` times, recording diagnostics.

    A singular denominator stops the orbit early with a `singular`
    termination; everything recorded up to that point is kept.

    Float orbits are reversible in practice to about 1e-6 over 200 steps;
    the roundoff of the two directions compounds roughly linearly with the
    step count, so scale tolerances accordingly for longer excursions.
    """
    if direction == "forward":
        step_fn = t3_coords_forward
    elif direction == "backward":
        step_fn = t3_coords_inverse
    else:
        raise ValueError(f"unknown direction: {direction!r}")
    states = [x0]
    conserved = [f_invariants(x0)]
    lo = list(x0.x)
    hi = list(x0.x)
    running_min = [tuple(lo)]
    running_max = [tuple(hi)]
    termination = Termination("completed")
    x = x0
    for m in range(1, steps + 1):
        try:
            x = step_fn(x)
        except SingularOrbitPoint as exc:
            termination = Termination("singular", step=m, index=exc.index)
            break
        states.append(x)
        conserved.append(f_invariants(x))
        for j, v in enumerate(x.x):
            if v < lo[j]:
                lo[j] = v
            if v > hi[j]:
                hi[j] = v
        running_min.append(tuple(lo))
        running_max.append(tuple(hi))
    return OrbitTrajectory(
        steps=states,
        direction=direction,
        conserved=conserved,
        running_min=running_min,
        running_max=running_max,
        termination=termination,
        seed=seed,
    )


# Square label -> (even interval, odd interval) the orbit must stay inside.
_CONTAINMENT = {
    "IJ": ("I", "J"),
    "KJ": ("K", "J"),
    "JI": ("J", "I"),
    "JK": ("J", "K"),
}

_INTERVAL_BOUNDS = {"I": (None, 0), "J": (0, 1), "K": (1, None)}


def _interval_margin(name: str, lo, hi):
    """Distance from the observed range [lo, hi] to the interval boundary."""
    left, right = _INTERVAL_BOUNDS[name]
    margins = []
    if left is not None:
        margins.append(lo - left)
    if right is not None:
        margins.append(right - hi)
    return min(margins)


def _first_violation(trajectory, parity, name):
    left, right = _INTERVAL_BOUNDS[name]
    for m, state in enumerate(trajectory.steps):
        vals = state.evens() if parity == "even" else state.odds()
        for j, v in enumerate(vals):
            idx = 2 * j if parity == "even" else 2 * j + 1
            if (left is not None and v <= left) or (right is not None and v >= right):
                return m, idx
    return None


def precompactness_report(trajectory: OrbitTrajectory) -> BoundsReport:
    """Observed bounds per parity; for side squares, asserts containment.

    Raises BoundViolation with the offending step/slot if a side-square
    orbit left its open intervals (which would contradict the conservation
    argument and indicates a bug or a tolerance problem).
    """
    if not trajectory.termination.completed():
        raise ValueError("precompactness diagnostics need a completed trajectory")
    lo = trajectory.running_min[-1]
    hi = trajectory.running_max[-1]
    even_bounds = (min(lo[0::2]), max(hi[0::2]))
    odd_bounds = (min(lo[1::2]), max(hi[1::2]))
    square = grid_classify(trajectory.steps[0])
    margins = {}
    label = square.label()
    if label in _CONTAINMENT:
        even_iv, odd_iv = _CONTAINMENT[label]
        for parity, iv, bounds in (
            ("even", even_iv, even_bounds),
            ("odd", odd_iv, odd_bounds),
        ):
            margin = _interval_margin(iv, *bounds)
            if margin <= 0:
                step, idx = _first_violation(trajectory, parity, iv)
                raise BoundViolation(step, idx)
            margins[parity] = margin
    return BoundsReport(odd_bounds, even_bounds, square, margins)


def project_state(x: CornerInvariants) -> AffinePoint:
    """The projection chart of one orbit state.

    Reconstructs a representative, sends (P_-2, P_-1, P_0, P_1) to the unit
    square, and returns the affine position of P_3 in that chart.
    """
    poly = reconstruct(x)
    frame = [poly.vertex_at(i) for i in (-2, -1, 0, 1)]
    phi = transform_from_correspondence(frame, SEED_UNIT_SQUARE)
    image = phi.apply(poly.vertex_at(3))
    if not image.is_affine():
        raise DegenerateInput("projected vertex escaped the affine patch")
    return image.to_affine()


def orbit_projection(x0: CornerInvariants, steps: int,
                     direction: str = "forward") -> list:
    """Projected positions of P_3 along the orbit, one AffinePoint per state."""
    trajectory = iterate(x0, steps, direction)
    points = []
    for m, state in enumerate(trajectory.steps):
        try:
            points.append(project_state(state))
        except (DegenerateInput, DegeneratePosition, DegenerateInvariants,
                MonodromyFailure) as exc:
            raise ProjectionFailure(m, f"step {m}: {exc}") from exc
    return points


# ---------------------------------------------------------------------------
# Heuristic spiral sampling (used where no coordinate characterization exists)
# ---------------------------------------------------------------------------

# Turning angle as a fraction of 2*pi/k, and radial decay per k clicks, per
# spiral type.  Boxes sit inside the empirically certified region of the
# logarithmic-spiral family for k in {3, 4, 5}; perturbed copies are
# re-certified and rejected on failure.
_SPIRAL_PARAMS = {
    "alpha": {"turn": (1.08, 1.22), "decay": (0.35, 0.55)},
    "beta": {"turn": (0.75, 0.92), "decay": (0.50, 0.90)},
}


def _log_spiral_polygon(n, k, turn, decay, jitter, rng) -> TwistedPolygon:
    theta = 2 * math.pi / k * turn
    step = decay ** (1.0 / k)
    pts = []
    for j in range(n):
        r = step ** j
        # perturbation scales with the local radius to stay proportionate
        x = r * (math.cos(j * theta) + jitter * rng.uniform(-1, 1))
        y = r * (math.sin(j * theta) + jitter * rng.uniform(-1, 1))
        pts.append(HomogeneousPoint(x, y, 1.0))
    c, s = math.cos(n * theta), math.sin(n * theta)
    scale = step ** n
    mono = ProjectiveTransform((
        (scale * c, -scale * s, 0.0),
        (scale * s, scale * c, 0.0),
        (0.0, 0.0, 1.0),
    ))
    return TwistedPolygon(pts, mono)


def sample_spiral_polygon(k: int, spiral_type: str, n: int, rng_seed: int,
                          horizon: int | None = None,
                          max_tries: int = 200) -> TwistedPolygon:
    """A certified k-spiral witness of the requested type (heuristic sampler).

    Perturbs a logarithmic spiral whose monodromy is a rotation-scaling and
    keeps the draw only if the spiral window check certifies the requested
    type over the horizon.  This is the sampling route for k >= 4, where the
    paper gives no coordinate region to draw from.
    """
    if spiral_type not in _SPIRAL_PARAMS:
        raise ValueError(f"unknown spiral type: {spiral_type!r}")
    if horizon is None:
        horizon = 3 * n
    rng = np.random.default_rng(rng_seed)
    params = _SPIRAL_PARAMS[spiral_type]
    for _ in range(max_tries):
        turn = rng.uniform(*params["turn"])
        decay = rng.uniform(*params["decay"])
        jitter = rng.uniform(0.0, 0.01)
        try:
            poly = _log_spiral_polygon(n, k, turn, decay, jitter, rng)
            report = spiral_window_check(
                poly, k, window_start=0, horizon=horizon, renormalize=False
            )
        except (DegenerateInput, DegenerateConfiguration, NonAffineVertex,
                NotKNice, ValueError):
            continue
        if report.type == spiral_type:
            return poly
    raise ValueError(
        f"could not certify a type-{spiral_type} {k}-spiral in {max_tries} draws"
    )
