"""The deep diagonal maps: geometric T_k / T_k^{-1} and the birational
coordinate form of T_3.

Two labelings of the geometric map are supported.  The forward-shift
convention defines the image vertex as

    P'_i = P_i P_{i+k}  ^  P_{i+1} P_{i+k+1}

while the centered convention (defined for k = 3 only) uses

    P'_i = P_{i-2} P_{i+1}  ^  P_{i-1} P_{i+2}

which is the forward-shift image relabeled by two slots.  The coordinate
formula below realizes the centered convention; orbits iterate it directly so
no geometry is rebuilt per step.
"""

from __future__ import annotations

from enum import Enum

from .classification import is_k_nice
from .errors import DegenerateInvariants, NotKNice, SingularOrbitPoint
from .polygon import CornerInvariants, TwistedPolygon
from .projective import join, meet
from .scalars import EPS_SINGULAR, is_exact, is_finite_scalar


class Labeling(Enum):
    FORWARD_SHIFT = "forward-shift"
    CENTERED_3 = "centered-3"


def t_k_forward(polygon: TwistedPolygon, k: int,
                labeling: Labeling = Labeling.FORWARD_SHIFT) -> TwistedPolygon:
    """One step of T_k; the image shares n and the monodromy."""
    if k < 2:
        raise ValueError("the diagonal map needs k >= 2")
    if labeling is Labeling.CENTERED_3 and k != 3:
        raise ValueError("the centered labeling is defined for k = 3 only")
    if not is_k_nice(polygon, k):
        raise NotKNice(f"polygon is not {k}-nice")
    verts = []
    v = polygon.vertex_at
    for i in range(polygon.n):
        if labeling is Labeling.FORWARD_SHIFT:
            a = join(v(i), v(i + k))
            b = join(v(i + 1), v(i + k + 1))
        else:
            a = join(v(i - 2), v(i + 1))
            b = join(v(i - 1), v(i + 2))
        verts.append(meet(a, b))
    return TwistedPolygon(verts, polygon.monodromy)


def t_k_inverse(polygon: TwistedPolygon, k: int) -> TwistedPolygon:
    """One step of T_k^{-1} (forward-shift labeling):
    P_i = P'_{i-k-1} P'_{i-k}  ^  P'_{i-1} P'_i."""
    if k < 2:
        raise ValueError("the diagonal map needs k >= 2")
    if not is_k_nice(polygon, k):
        raise NotKNice(f"polygon is not {k}-nice")
    verts = []
    v = polygon.vertex_at
    for i in range(polygon.n):
        a = join(v(i - k - 1), v(i - k))
        b = join(v(i - 1), v(i))
        verts.append(meet(a, b))
    return TwistedPolygon(verts, polygon.monodromy)


def _check_den(den, t1, t2, exact, slot):
    if exact:
        if den == 0:
            raise SingularOrbitPoint(slot)
    elif abs(den) <= EPS_SINGULAR * (abs(t1) + abs(t2)):
        raise SingularOrbitPoint(slot)


def _require_finite(x: CornerInvariants):
    if not all(is_finite_scalar(v) for v in x):
        raise DegenerateInvariants("coordinate maps need finite invariants")


def t3_coords_forward(x: CornerInvariants) -> CornerInvariants:
    """T_3 on corner invariants (centered labeling), indices mod 2n."""
    _require_finite(x)
    vals = x.x
    m = len(vals)
    exact = is_exact(*vals)
    out = [None] * m
    for e in range(0, m, 2):
        t1 = vals[e - 2] * vals[e - 1]
        t2 = (1 - vals[(e + 1) % m]) * (1 - vals[e - 4])
        den = t1 - t2
        _check_den(den, t1, t2, exact, e)
        out[e] = vals[e - 2] * (vals[e - 4] + vals[e - 1] - 1) / den

        o = e + 1
        t1 = vals[(e + 2) % m] * vals[(e + 3) % m]
        t2 = (1 - vals[(e + 5) % m]) * (1 - vals[e])
        den = t1 - t2
        _check_den(den, t1, t2, exact, o)
        out[o] = vals[(e + 3) % m] * (vals[(e + 2) % m] + vals[(e + 5) % m] - 1) / den
    return CornerInvariants(out)


def t3_coords_inverse(x: CornerInvariants) -> CornerInvariants:
    """T_3^{-1} on corner invariants; exact inverse of t3_coords_forward."""
    _require_finite(x)
    vals = x.x
    m = len(vals)
    exact = is_exact(*vals)
    out = [None] * m
    for e in range(0, m, 2):
        t1 = vals[(e + 1) % m] * vals[(e + 2) % m]
        t2 = (1 - vals[e - 1]) * (1 - vals[(e + 4) % m])
        den = t1 - t2
        _check_den(den, t1, t2, exact, e)
        out[e] = vals[(e + 2) % m] * (vals[(e + 4) % m] + vals[(e + 1) % m] - 1) / den

        o = e + 1
        t1 = vals[e] * vals[e - 1]
        t2 = (1 - vals[(e + 2) % m]) * (1 - vals[e - 3])
        den = t1 - t2
        _check_den(den, t1, t2, exact, o)
        out[o] = vals[e - 1] * (vals[e - 3] + vals[e] - 1) / den
    return CornerInvariants(out)
