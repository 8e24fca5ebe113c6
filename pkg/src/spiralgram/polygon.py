"""Twisted n-gons, corner-invariant extraction, and reconstruction.

A twisted polygon stores one period of vertices plus the monodromy M; the
bi-infinite vertex sequence satisfies P_{i+n} = M(P_i).  Corner invariants
are the 2n inverse cross ratios that coordinatize the projective class, and
`reconstruct` inverts the extraction by solving, in the pencil of lines
through a frame vertex, for the two lines whose intersection is the next
vertex.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import (
    DegenerateConfiguration,
    DegenerateInput,
    DegenerateInvariants,
    DegeneratePosition,
    MonodromyFailure,
    NotCollinear,
)
from .projective import (
    HomogeneousPoint,
    ProjectiveLine,
    ProjectiveTransform,
    collinear,
    cross_ratio_points,
    join,
    meet,
    transform_from_correspondence,
    _solve_pair,
)
from .scalars import INF, is_finite_scalar, promote


def _point(xy):
    return HomogeneousPoint(xy[0], xy[1], 1)


# Canonical reconstruction seed (the frame used in the type-beta arguments).
SEED_UNIT_SQUARE = tuple(_point(p) for p in ((0, 0), (1, 0), (1, 1), (0, 1)))
# Frame used in the type-alpha arguments.
SEED_ALPHA = tuple(_point(p) for p in ((-1, 0), (1, 0), (0, 2), (0, 1)))


class CornerInvariants:
    """The 2n-tuple (x_0, ..., x_{2n-1}); indices are cyclic modulo 2n."""

    __slots__ = ("n", "x")

    def __init__(self, values):
        vals = tuple(promote(v) if is_finite_scalar(v) else v for v in values)
        if len(vals) < 4 or len(vals) % 2 != 0:
            raise ValueError("corner invariants come as a 2n-tuple with n >= 2")
        self.x = vals
        self.n = len(vals) // 2

    def at(self, i: int):
        return self.x[i % (2 * self.n)]

    def evens(self):
        return self.x[0::2]

    def odds(self):
        return self.x[1::2]

    def is_generic(self) -> bool:
        """True when no entry is 0, 1 or infinite (the dynamics domain)."""
        return all(
            is_finite_scalar(v) and v != 0 and v != 1 for v in self.x
        )

    def __iter__(self):
        return iter(self.x)

    def __len__(self):
        return len(self.x)

    def __eq__(self, other):
        if not isinstance(other, CornerInvariants):
            return NotImplemented
        return self.x == other.x

    def __repr__(self):
        return f"CornerInvariants({list(self.x)!r})"


class TwistedPolygon:
    """n fundamental vertices plus monodromy; vertex_at extends to all of Z."""

    __slots__ = ("n", "vertices", "monodromy", "_powers")

    def __init__(self, vertices, monodromy: ProjectiveTransform, validate=True):
        self.vertices = tuple(vertices)
        self.n = len(self.vertices)
        self.monodromy = monodromy
        self._powers = {0: ProjectiveTransform.identity(), 1: monodromy}
        if self.n < 2:
            raise ValueError("a twisted polygon needs at least 2 vertices")
        if validate:
            for i in range(self.n):
                trip = (self.vertex_at(i), self.vertex_at(i + 1), self.vertex_at(i + 2))
                if collinear(*trip):
                    raise DegenerateConfiguration(
                        f"vertices {i}, {i + 1}, {i + 2} are collinear"
                    )

    def _power(self, q: int) -> ProjectiveTransform:
        if q not in self._powers:
            if q > 0:
                self._powers[q] = self._power(q - 1).compose(self.monodromy)
            else:
                self._powers[q] = self._power(q + 1).compose(self.monodromy.inverse())
        return self._powers[q]

    def vertex_at(self, i: int) -> HomogeneousPoint:
        q, r = divmod(i, self.n)
        if q == 0:
            return self.vertices[r]
        return self._power(q).apply(self.vertices[r])

    def window(self, start: int, stop: int):
        return [self.vertex_at(i) for i in range(start, stop)]

    def transformed(self, phi: ProjectiveTransform) -> "TwistedPolygon":
        """Apply phi to every vertex; the monodromy conjugates."""
        return TwistedPolygon(
            [phi.apply(v) for v in self.vertices],
            phi.compose(self.monodromy).compose(phi.inverse()),
            validate=False,
        )

    def exactified(self) -> "TwistedPolygon":
        """Exact-rational copy (floats converted exactly to Fractions).

        Orientation predicates on strongly contracting spirals fall below
        double precision a few periods into a window; running them over the
        exactified representative makes every sign decision exact.
        """
        verts = [
            HomogeneousPoint(*(Fraction(float(c)) for c in v.coords))
            for v in self.vertices
        ]
        rows = tuple(
            tuple(Fraction(float(v)) for v in row) for row in self.monodromy.matrix
        )
        return TwistedPolygon(verts, ProjectiveTransform(rows), validate=False)

    def shifted(self, i: int) -> "TwistedPolygon":
        """Relabel so the new j-th vertex is the old (j+i)-th; monodromy kept."""
        return TwistedPolygon(
            [self.vertex_at(j + i) for j in range(self.n)],
            self.monodromy,
            validate=False,
        )

    def reversed(self) -> "TwistedPolygon":
        """Reverse the vertex order; the monodromy inverts."""
        return TwistedPolygon(
            [self.vertex_at(-j) for j in range(self.n)],
            self.monodromy.inverse(),
            validate=False,
        )

    def __repr__(self):
        return f"TwistedPolygon(n={self.n})"


def corner_pair(pm2, pm1, p0, p1, p2):
    """The invariant pair (x_{2i}, x_{2i+1}) of the window P_{i-2}..P_{i+2}."""
    try:
        base_e = join(pm2, pm1)
        a = meet(base_e, join(p0, p1))
        b = meet(base_e, join(p1, p2))
        x_even = cross_ratio_points(pm2, pm1, a, b)
        base_o = join(p2, p1)
        c = meet(base_o, join(p0, pm1))
        d = meet(base_o, join(pm1, pm2))
        x_odd = cross_ratio_points(p2, p1, c, d)
    except (DegenerateInput, NotCollinear) as exc:
        raise DegenerateConfiguration(str(exc)) from exc
    return x_even, x_odd


def corner_invariants(polygon: TwistedPolygon) -> CornerInvariants:
    """All 2n corner invariants of one period."""
    out = []
    for i in range(polygon.n):
        w = polygon.window(i - 2, i + 3)
        try:
            xe, xo = corner_pair(*w)
        except DegenerateConfiguration as exc:
            raise DegenerateConfiguration(f"window at vertex {i}: {exc}") from exc
        out.extend((xe, xo))
    return CornerInvariants(out)


def extend_from_invariants(frame, x2i, x2i1) -> HomogeneousPoint:
    """Solve for P_{i+2} given the frame P_{i-2}..P_{i+1} and its invariant pair.

    The line P_{i+1}P_{i+2} is pinned inside the pencil at P_{i+1} by the value
    x_{2i}, and P_{i-1}P_{i+2} inside the pencil at P_{i-1} by x_{2i+1}; the
    vertex is their intersection.
    """
    if not (is_finite_scalar(x2i) and is_finite_scalar(x2i1)):
        raise DegenerateInvariants("infinite corner invariant")
    x2i = promote(x2i)
    x2i1 = promote(x2i1)
    pm2, pm1, p0, p1 = frame
    l1 = join(p1, pm2)
    l2 = join(p1, pm1)
    l3 = join(p1, p0)
    al, be = _solve_pair(l3.coords, l1.coords, l2.coords)
    scale = (1 - x2i) * be
    l4c = tuple(al * a + scale * b for a, b in zip(l1.coords, l2.coords))
    m2 = join(pm1, p1)
    m3 = join(pm1, p0)
    m4 = join(pm1, pm2)
    ga, de = _solve_pair(m4.coords, m2.coords, m3.coords)
    scale = x2i1 * de
    m1c = tuple(ga * a + scale * b for a, b in zip(m2.coords, m3.coords))
    try:
        l4 = ProjectiveLine.from_coords(l4c)
        m1 = ProjectiveLine.from_coords(m1c)
        return meet(l4, m1)
    except (DegenerateInput, ValueError) as exc:
        raise DegenerateInvariants(f"pencil solution degenerate: {exc}") from exc


def reconstruct(x: CornerInvariants, seed=None) -> TwistedPolygon:
    """A representative twisted polygon with the given corner invariants.

    Seeds P_0..P_3 on the given frame (unit square by default), extends to
    P_{n+3} by pencil solving, and reads the monodromy off the final frame.
    Different seeds give projectively equivalent polygons.
    """
    if not x.is_generic():
        raise DegenerateInvariants(
            "reconstruction requires invariants away from 0, 1 and infinity"
        )
    pts = list(seed if seed is not None else SEED_UNIT_SQUARE)
    if len(pts) != 4:
        raise ValueError("seed must be a quadruple of points")
    n = x.n
    for i in range(2, n + 2):
        frame = pts[i - 2:i + 2]
        pts.append(extend_from_invariants(frame, x.at(2 * i), x.at(2 * i + 1)))
    try:
        m = transform_from_correspondence(pts[0:4], pts[n:n + 4])
    except (DegeneratePosition, DegenerateInput) as exc:
        raise MonodromyFailure(f"closing frame degenerate: {exc}") from exc
    return TwistedPolygon(pts[:n], m)
