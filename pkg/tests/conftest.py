"""Shared helpers: random generic data, transforms, projective comparisons."""

import math
from fractions import Fraction

import numpy as np
import pytest

from spiralgram import (
    CornerInvariants,
    HomogeneousPoint,
    ProjectiveTransform,
    TwistedPolygon,
)


def regular_polygon(n: int) -> TwistedPolygon:
    """Closed regular n-gon on the unit circle (identity monodromy)."""
    pts = [
        HomogeneousPoint(
            math.cos(2 * math.pi * j / n), math.sin(2 * math.pi * j / n), 1.0
        )
        for j in range(n)
    ]
    return TwistedPolygon(pts, ProjectiveTransform.identity())


def random_transform(rng, exact=False) -> ProjectiveTransform:
    """A random well-conditioned element of PGL3."""
    while True:
        m = rng.uniform(-2, 2, size=(3, 3))
        if abs(np.linalg.det(m)) > 0.05 * abs(m).max() ** 3:
            break
    if exact:
        rows = tuple(
            tuple(Fraction(v).limit_denominator(1 << 12) for v in row) for row in m
        )
    else:
        rows = tuple(tuple(float(v) for v in row) for row in m)
    return ProjectiveTransform(rows)


def random_generic_rational(rng, n, denom=1024):
    """A 2n-tuple of random Fractions avoiding 0 and 1."""
    vals = []
    while len(vals) < 2 * n:
        v = Fraction(int(rng.integers(-6 * denom, 6 * denom)), denom)
        if v != 0 and v != 1:
            vals.append(v)
    return CornerInvariants(vals)


def proj_dev(a, b) -> float:
    """Max cross-pair deviation between two projective triples (0 iff equal)."""
    ca, cb = a.coords, b.coords
    return max(
        abs(float(ca[i]) * float(cb[j]) - float(ca[j]) * float(cb[i]))
        for i in range(3)
        for j in range(i + 1, 3)
    )


def polygons_equal(p, q, tol=1e-8) -> bool:
    if p.n != q.n:
        return False
    return all(proj_dev(p.vertex_at(i), q.vertex_at(i)) <= tol for i in range(p.n))


def max_invariant_dev(x, y) -> float:
    return max(abs(float(a) - float(b)) for a, b in zip(x, y))


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)
