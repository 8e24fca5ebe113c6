"""Classifiers: k-niceness, tic-tac-toe grid squares, and spiral windows.

Corner invariants are binned by parity into the intervals I = (-inf, 0),
J = (0, 1), K = (1, inf).  Spiral membership is certified on finite windows:
the window's leading frame is renormalized onto a reference frame and the
orientation/interior conditions are checked index by index, mirroring the
inductive structure of the correspondence proofs.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import DegeneratePosition, NonAffineVertex, NotKNice
from .polygon import CornerInvariants, SEED_ALPHA, SEED_UNIT_SQUARE, TwistedPolygon
from .projective import (
    in_general_position,
    in_triangle_interior,
    orientation,
    transform_from_correspondence,
)
from .scalars import is_finite_scalar

INTERVAL_NAMES = ("I", "J", "K")


def interval_of(v) -> str:
    """Which of I/J/K contains v; 'boundary' on {0, 1, infinity}."""
    if not is_finite_scalar(v):
        return "boundary"
    if v == 0 or v == 1:
        return "boundary"
    if v < 0:
        return "I"
    if v < 1:
        return "J"
    return "K"


@dataclass(frozen=True)
class GridSquare:
    """Per-parity interval verdicts for a tuple of corner invariants."""

    even: str
    odd: str

    def is_side_square(self) -> bool:
        return (self.even, self.odd) in (("I", "J"), ("K", "J"), ("J", "I"), ("J", "K"))

    def label(self) -> str:
        return self.even + self.odd

    def to_json(self) -> dict:
        return {"even": self.even, "odd": self.odd}


def _classify_parity(values) -> str:
    seen = set()
    for v in values:
        name = interval_of(v)
        if name == "boundary":
            return "boundary"
        seen.add(name)
    return seen.pop() if len(seen) == 1 else "mixed"


def grid_classify(x: CornerInvariants) -> GridSquare:
    return GridSquare(_classify_parity(x.evens()), _classify_parity(x.odds()))


def is_k_nice(polygon: TwistedPolygon, k: int) -> bool:
    """True iff (P_i, P_{i+1}, P_{i+k}, P_{i+k+1}) is in general position
    for every i of one period."""
    v = polygon.vertex_at
    for i in range(polygon.n):
        if not in_general_position((v(i), v(i + 1), v(i + k), v(i + k + 1))):
            return False
    return True


@dataclass
class SpiralReport:
    """Outcome of a windowed spiral certification."""

    k: int
    type: str  # "alpha" | "beta" | "none"
    window_start: int
    window_length: int
    failures: list = field(default_factory=list)

    def certified(self) -> bool:
        return self.type != "none"

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "type": self.type,
            "window_start": self.window_start,
            "window_length": self.window_length,
            "failures": [[i, name] for i, name in self.failures],
        }


SPIRAL_FRAMES = {"alpha": SEED_ALPHA, "beta": SEED_UNIT_SQUARE}


def _window_failures(polygon, k, start, horizon, spiral_type, renormalize):
    """Condition failures of one spiral type over [start, start+horizon]."""
    if renormalize:
        frame = [polygon.vertex_at(start + j) for j in range(4)]
        try:
            phi = transform_from_correspondence(frame, SPIRAL_FRAMES[spiral_type])
        except DegeneratePosition:
            return [(start, f"{spiral_type}:frame-degenerate")]
        poly = polygon.transformed(phi)
    else:
        poly = polygon

    cache = {}

    def affine(i):
        if i not in cache:
            vert = poly.vertex_at(i)
            cache[i] = vert.to_affine() if vert.is_affine() else None
        return cache[i]

    failures = []
    for i in range(start, start + horizon + 1):
        idxs = (i, i + 1, i + 2, i + k, i + k + 1)
        pts = [affine(j) for j in idxs]
        missing = [j for j, p in zip(idxs, pts) if p is None]
        if missing:
            if not renormalize:
                raise NonAffineVertex(missing[0])
            failures.append((missing[0], f"{spiral_type}:affine"))
            continue
        pi, pi1, pi2, pik, pik1 = pts
        if orientation(pi, pi1, pi2) <= 0:
            failures.append((i, f"{spiral_type}:consecutive-orientation"))
        if spiral_type == "alpha":
            if orientation(pi, pi1, pik1) <= 0:
                failures.append((i, "alpha:triangle-orientation"))
            elif not in_triangle_interior(pik, pi, pi1, pik1):
                failures.append((i, "alpha:interior"))
        else:
            if orientation(pi, pi1, pik) <= 0:
                failures.append((i, "beta:triangle-orientation"))
            elif not in_triangle_interior(pik1, pi, pi1, pik):
                failures.append((i, "beta:interior"))
    return failures


def spiral_window_check(polygon: TwistedPolygon, k: int, window_start: int = 0,
                        horizon: int | None = None, renormalize: bool = True,
                        exact: bool = True) -> SpiralReport:
    """Certify the window [N, N+horizon] as type alpha or beta (or neither).

    With renormalize=True (the default) the frame (P_N, ..., P_{N+3}) is sent
    onto the reference frame of the tested type first, so the verdict only
    depends on the projective class.  With renormalize=False the check runs in
    the chart of the given representative and a vertex outside the affine
    patch raises NonAffineVertex.

    By default the whole pipeline runs over the exactified representative:
    contracting spirals shrink below double precision within a few periods,
    where float orientation signs are noise but exact ones are not.
    """
    if horizon is None:
        horizon = 3 * polygon.n
    if not is_k_nice(polygon, k):
        raise NotKNice(f"polygon is not {k}-nice")
    if exact:
        polygon = polygon.exactified()
    all_failures = []
    for spiral_type in ("alpha", "beta"):
        failures = _window_failures(
            polygon, k, window_start, horizon, spiral_type, renormalize
        )
        if not failures:
            return SpiralReport(k, spiral_type, window_start, horizon, [])
        all_failures.extend(failures)
    return SpiralReport(k, "none", window_start, horizon, all_failures)


def transversal_check(polygon: TwistedPolygon, k: int, start: int, stop: int) -> dict:
    """Orientation signs of the arcs through vertices k apart.

    Checks the triples (P_i, P_{i+k}, P_{i+2k}) for i in [start, stop]:
    all positive is the alpha flow direction, all negative the beta one.
    Runs in the chart of the given representative.
    """
    alpha = True
    beta = True
    for i in range(start, stop + 1):
        pts = []
        for j in (i, i + k, i + 2 * k):
            vert = polygon.vertex_at(j)
            if not vert.is_affine():
                raise NonAffineVertex(j)
            pts.append(vert.to_affine())
        o = orientation(*pts)
        alpha = alpha and o > 0
        beta = beta and o < 0
    return {"alpha": alpha, "beta": beta}
