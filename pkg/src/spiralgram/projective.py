"""Homogeneous-coordinate primitives for the real projective plane.

Points, lines, and transforms are immutable values over a generic scalar
(float or exact Fraction).  Every constructor renormalizes so the largest
coordinate has absolute value 1, which keeps thousand-step orbit computations
away from overflow and keeps tolerance thresholds scale-invariant.
"""

from __future__ import annotations

from .errors import (
    DegenerateInput,
    DegeneratePosition,
    NotCollinear,
    NotConcurrent,
)
from .scalars import (
    EPS_EQUAL,
    EPS_SINGULAR,
    INF,
    is_exact,
    normalize_triple,
    promote,
)


def _cross(a, b):
    return (
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    )


def _dot(a, b):
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]


def _det3(r0, r1, r2):
    return (
        r0[0] * (r1[1] * r2[2] - r1[2] * r2[1])
        - r0[1] * (r1[0] * r2[2] - r1[2] * r2[0])
        + r0[2] * (r1[0] * r2[1] - r1[1] * r2[0])
    )


def _proportional(u, v, tol):
    """Scale-invariant equality of coordinate tuples (any common length)."""
    for i in range(len(u)):
        for j in range(i + 1, len(u)):
            if abs(u[i] * v[j] - u[j] * v[i]) > tol:
                return False
    return True


class _Triple:
    """Shared behavior of points and lines (projective duality)."""

    __slots__ = ("coords",)

    def __init__(self, x, y, z):
        self.coords = normalize_triple((promote(x), promote(y), promote(z)))

    @classmethod
    def from_coords(cls, coords):
        return cls(coords[0], coords[1], coords[2])

    def _tol(self, other=None):
        vals = self.coords + (other.coords if other is not None else ())
        return 0 if is_exact(*vals) else EPS_EQUAL

    def projectively_equal(self, other, tol=None) -> bool:
        if tol is None:
            tol = self._tol(other)
        return _proportional(self.coords, other.coords, tol)

    def __eq__(self, other):
        if not isinstance(other, type(self)):
            return NotImplemented
        return self.projectively_equal(other)

    def __hash__(self):
        raise TypeError(f"{type(self).__name__} compares up to scale; not hashable")

    def __repr__(self):
        inner = ":".join(repr(c) for c in self.coords)
        return f"{type(self).__name__}[{inner}]"


class HomogeneousPoint(_Triple):
    """Point of RP^2 given as [x:y:z], defined up to nonzero scale."""

    def is_affine(self, tol=None) -> bool:
        if tol is None:
            tol = self._tol()
        return abs(self.coords[2]) > tol

    def to_affine(self) -> "AffinePoint":
        if not self.is_affine():
            raise DegenerateInput("point lies on the line at infinity")
        x, y, z = self.coords
        return AffinePoint(x / z, y / z)


class ProjectiveLine(_Triple):
    """Line of RP^2 as [a:b:c] with incidence a*x + b*y + c*z = 0."""

    def contains(self, p: HomogeneousPoint, tol=None) -> bool:
        if tol is None:
            tol = 0 if is_exact(*self.coords, *p.coords) else EPS_EQUAL
        return abs(_dot(self.coords, p.coords)) <= tol


class AffinePoint:
    """Point of the affine patch; corresponds to [x:y:1]."""

    __slots__ = ("x", "y")

    def __init__(self, x, y):
        self.x = promote(x)
        self.y = promote(y)

    def to_homogeneous(self) -> HomogeneousPoint:
        return HomogeneousPoint(self.x, self.y, 1)

    def __iter__(self):
        return iter((self.x, self.y))

    def __repr__(self):
        return f"AffinePoint({self.x!r}, {self.y!r})"


class ProjectiveTransform:
    """Element of PGL3(R): a nonsingular 3x3 matrix up to scale."""

    __slots__ = ("matrix", "_inv")

    def __init__(self, rows, check=True):
        # `check` applies the singularity floor; compositions and inverses of
        # transforms that already passed it skip the re-check, since products
        # of nonsingular matrices can have tiny normalized determinants while
        # staying perfectly invertible (e.g. powers of contracting monodromies).
        rows = tuple(tuple(promote(v) for v in r) for r in rows)
        if len(rows) != 3 or any(len(r) != 3 for r in rows):
            raise ValueError("expected a 3x3 matrix")
        m = max(abs(v) for r in rows for v in r)
        if m == 0:
            raise DegenerateInput("zero matrix")
        rows = tuple(tuple(v / m for v in r) for r in rows)
        det = _det3(*rows)
        if check:
            floor = 0 if is_exact(*(v for r in rows for v in r)) else EPS_SINGULAR
            if abs(det) <= floor:
                raise DegenerateInput("matrix is singular within tolerance")
        elif det == 0:
            raise DegenerateInput("matrix degenerated to singular")
        self.matrix = rows
        self._inv = None

    @classmethod
    def identity(cls) -> "ProjectiveTransform":
        return cls(((1, 0, 0), (0, 1, 0), (0, 0, 1)))

    def apply(self, p: HomogeneousPoint) -> HomogeneousPoint:
        r0, r1, r2 = self.matrix
        c = p.coords
        return HomogeneousPoint(_dot(r0, c), _dot(r1, c), _dot(r2, c))

    def __call__(self, p: HomogeneousPoint) -> HomogeneousPoint:
        return self.apply(p)

    def apply_line(self, l: ProjectiveLine) -> ProjectiveLine:
        # lines push forward by the inverse transpose
        inv = self.inverse().matrix
        c = l.coords
        cols = tuple(tuple(r[j] for r in inv) for j in range(3))
        return ProjectiveLine(_dot(cols[0], c), _dot(cols[1], c), _dot(cols[2], c))

    def compose(self, other: "ProjectiveTransform") -> "ProjectiveTransform":
        """self after other (matrix product self @ other)."""
        a, b = self.matrix, other.matrix
        rows = tuple(
            tuple(sum(a[i][k] * b[k][j] for k in range(3)) for j in range(3))
            for i in range(3)
        )
        return ProjectiveTransform(rows, check=False)

    def __matmul__(self, other):
        return self.compose(other)

    def inverse(self) -> "ProjectiveTransform":
        if self._inv is None:
            m = self.matrix
            cof = tuple(
                tuple(
                    m[(j + 1) % 3][(i + 1) % 3] * m[(j + 2) % 3][(i + 2) % 3]
                    - m[(j + 1) % 3][(i + 2) % 3] * m[(j + 2) % 3][(i + 1) % 3]
                    for j in range(3)
                )
                for i in range(3)
            )
            self._inv = ProjectiveTransform(cof, check=False)
            self._inv._inv = self
        return self._inv

    def power(self, q: int) -> "ProjectiveTransform":
        """q-th power (q may be negative), renormalizing at every step."""
        base = self if q >= 0 else self.inverse()
        out = ProjectiveTransform.identity()
        for _ in range(abs(q)):
            out = out.compose(base)
        return out

    def projectively_equal(self, other, tol=None) -> bool:
        flat_a = tuple(v for r in self.matrix for v in r)
        flat_b = tuple(v for r in other.matrix for v in r)
        if tol is None:
            tol = 0 if is_exact(*flat_a, *flat_b) else EPS_EQUAL
        return _proportional(flat_a, flat_b, tol)

    def __repr__(self):
        return f"ProjectiveTransform({self.matrix!r})"


def join(p: HomogeneousPoint, q: HomogeneousPoint) -> ProjectiveLine:
    """The line through two distinct points (antisymmetric cross product)."""
    if p.projectively_equal(q):
        raise DegenerateInput("join of coincident points")
    return ProjectiveLine.from_coords(_cross(p.coords, q.coords))


def meet(l: ProjectiveLine, m: ProjectiveLine) -> HomogeneousPoint:
    """The intersection point of two distinct lines (dual cross product)."""
    if l.projectively_equal(m):
        raise DegenerateInput("meet of coincident lines")
    return HomogeneousPoint.from_coords(_cross(l.coords, m.coords))


def collinear(p: HomogeneousPoint, q: HomogeneousPoint, r: HomogeneousPoint,
              tol=None) -> bool:
    vals = p.coords + q.coords + r.coords
    if tol is None:
        tol = 0 if is_exact(*vals) else EPS_SINGULAR
    return abs(_det3(p.coords, q.coords, r.coords)) <= tol


def in_general_position(points, tol=None) -> bool:
    """No three of the given points collinear."""
    pts = list(points)
    for i in range(len(pts)):
        for j in range(i + 1, len(pts)):
            for k in range(j + 1, len(pts)):
                if collinear(pts[i], pts[j], pts[k], tol):
                    return False
    return True


def orientation(v1: AffinePoint, v2: AffinePoint, v3: AffinePoint):
    """Signed area pairing det(V2 - V1, V3 - V2); zero iff collinear."""
    ax, ay = v2.x - v1.x, v2.y - v1.y
    bx, by = v3.x - v2.x, v3.y - v2.y
    return ax * by - ay * bx


def in_triangle_interior(w: AffinePoint, v1: AffinePoint, v2: AffinePoint,
                         v3: AffinePoint) -> bool:
    """Strict interior test: boundary points return False."""
    base = orientation(v1, v2, v3)
    if base == 0:
        raise DegenerateInput("triangle vertices are collinear")
    for a, b in ((v1, v2), (v2, v3), (v3, v1)):
        o = orientation(a, b, w)
        if o == 0 or (o > 0) != (base > 0):
            return False
    return True


def _solve_pair(v, e0, e1):
    """Coefficients (alpha, beta) with v = alpha*e0 + beta*e1.

    All three triples must lie in a common 2-dimensional subspace; the best-
    conditioned pair of rows is used (first nonzero pair in exact mode).
    """
    best = None
    best_mag = -1
    for r in range(3):
        for s in range(r + 1, 3):
            d = e0[r] * e1[s] - e0[s] * e1[r]
            if abs(d) > best_mag:
                best_mag = abs(d)
                best = (r, s, d)
    if best is None or best[2] == 0:
        raise DegenerateInput("basis triples are proportional")
    r, s, d = best
    alpha = (v[r] * e1[s] - v[s] * e1[r]) / d
    beta = (e0[r] * v[s] - e0[s] * v[r]) / d
    return alpha, beta


def _bracket(a, b):
    return a[0] * b[1] - a[1] * b[0]


def _spanning_pair(triples):
    """Indices of the most independent pair, plus their cross product."""
    besti, bestj, best_cross, best_mag = 0, 1, None, -1
    for i in range(len(triples)):
        for j in range(i + 1, len(triples)):
            c = _cross(triples[i], triples[j])
            mag = max(abs(c[0]), abs(c[1]), abs(c[2]))
            if mag > best_mag:
                best_mag = mag
                besti, bestj, best_cross = i, j, c
    if best_mag == 0:
        raise DegenerateInput("all elements coincide")
    return besti, bestj, best_cross


def _chart_coords(triples):
    """2D coordinates of coplanar triples in the best basis pair among them."""
    besti, bestj, _ = _spanning_pair(triples)
    e0, e1 = triples[besti], triples[bestj]
    return [_solve_pair(t, e0, e1) for t in triples]


def _chi_from_chart(coords):
    """Inverse cross ratio from 2D homogeneous chart coordinates."""
    a, b, c, d = coords
    num = _bracket(a, b) * _bracket(c, d)
    den = _bracket(a, c) * _bracket(b, d)
    if den == 0:
        if num == 0:
            raise DegenerateInput("cross ratio is 0/0 (three coincident elements)")
        return INF
    return num / den


def cross_ratio_points(a: HomogeneousPoint, b: HomogeneousPoint,
                       c: HomogeneousPoint, d: HomogeneousPoint):
    """Inverse cross ratio (a-b)(c-d)/((a-c)(b-d)) of four collinear points.

    Evaluated through chart coordinates on the common line, so points at
    chart infinity need no special casing.  Returns a scalar or INF.
    """
    pts = (a.coords, b.coords, c.coords, d.coords)
    tol = 0 if is_exact(*(v for t in pts for v in t)) else EPS_EQUAL
    besti, bestj, line = _spanning_pair(pts)
    line = normalize_triple(line)
    for p in pts:
        if abs(_dot(line, p)) > tol:
            raise NotCollinear("the four points do not lie on a common line")
    e0, e1 = pts[besti], pts[bestj]
    return _chi_from_chart([_solve_pair(t, e0, e1) for t in pts])


_AUX_CANDIDATES = ((0, 0, 1), (1, 0, 0), (0, 1, 0), (1, 1, 1))


def cross_ratio_lines(l: ProjectiveLine, m: ProjectiveLine,
                      n: ProjectiveLine, k: ProjectiveLine, aux=None):
    """Inverse cross ratio of four concurrent lines.

    Cuts the pencil with an auxiliary line missing the common point and
    delegates to cross_ratio_points; the result does not depend on the cut.
    """
    try:
        o = meet(l, m)
    except DegenerateInput as exc:
        raise NotConcurrent("first two lines coincide") from exc
    tol = 0 if is_exact(*l.coords, *m.coords, *n.coords, *k.coords) else EPS_EQUAL
    for other in (n, k):
        if not other.contains(o, tol):
            raise NotConcurrent("lines do not share a common point")
    if aux is None:
        best = None
        best_mag = -1
        for cand in _AUX_CANDIDATES:
            mag = abs(_dot(cand, o.coords))
            if mag > best_mag:
                best_mag = mag
                best = cand
        aux = ProjectiveLine(*best)
    elif aux.contains(o, tol):
        raise DegenerateInput("auxiliary line passes through the pencil point")
    cuts = [meet(x, aux) for x in (l, m, n, k)]
    return cross_ratio_points(*cuts)


def _frame_matrix(quad):
    """Matrix sending the standard frame e1,e2,e3,(1,1,1) to the quadruple."""
    p1, p2, p3, p4 = (p.coords for p in quad)
    floor = 0 if is_exact(*p1, *p2, *p3, *p4) else EPS_SINGULAR
    det = _det3(p1, p2, p3)
    if abs(det) <= floor:
        raise DegeneratePosition("first three points are collinear")
    # p4 = a*p1 + b*p2 + c*p3 by Cramer's rule
    a = _det3(p4, p2, p3) / det
    b = _det3(p1, p4, p3) / det
    c = _det3(p1, p2, p4) / det
    for name, coef in (("(2,3,4)", a), ("(1,3,4)", b), ("(1,2,4)", c)):
        if abs(coef) <= floor:
            raise DegeneratePosition(f"points {name} are collinear")
    cols = (
        tuple(a * v for v in p1),
        tuple(b * v for v in p2),
        tuple(c * v for v in p3),
    )
    rows = tuple(tuple(cols[j][i] for j in range(3)) for i in range(3))
    return ProjectiveTransform(rows)


def transform_from_correspondence(src, dst) -> ProjectiveTransform:
    """The unique transform carrying one general-position quadruple to another."""
    src = tuple(src)
    dst = tuple(dst)
    if len(src) != 4 or len(dst) != 4:
        raise ValueError("expected quadruples of points")
    return _frame_matrix(dst).compose(_frame_matrix(src).inverse())
