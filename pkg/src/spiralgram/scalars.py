"""Scalar layer shared by every geometric operation.

All geometry in this package is generic over the scalar: ordinary floats for
production orbits, `fractions.Fraction` for exact certification of algebraic
identities.  Integers are promoted to `Fraction` so that purely integral input
stays exact; any float in an expression demotes the computation to floating
point through Python's usual coercion rules.
"""

from __future__ import annotations

from fractions import Fraction

# Scale-invariant threshold for projective equality / incidence on normalized
# coordinate triples (float mode only; exact mode compares against zero).
EPS_EQUAL = 1e-9
# Floor below which determinants and map denominators count as singular.
EPS_SINGULAR = 1e-12


class Infinity:
    """Tagged point at infinity of the extended real line.

    The inverse cross ratio legitimately takes the value infinity; it is kept
    as a tag, never as an IEEE sentinel, so that exact mode stays exact.
    """

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INF"


class Undefined:
    """Tag for 0/0-style conserved quantities (never a valid coordinate)."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "UNDEFINED"


INF = Infinity()
UNDEFINED = Undefined()


def is_finite_scalar(v) -> bool:
    return not isinstance(v, (Infinity, Undefined))


def promote(v):
    """Promote ints to Fraction; leave floats and Fractions untouched."""
    if isinstance(v, bool):
        raise TypeError("bool is not a scalar")
    if isinstance(v, int):
        return Fraction(v)
    return v


def is_exact(*values) -> bool:
    """True when every value is exact (Fraction/int), so tolerances are zero."""
    return all(isinstance(v, (Fraction, int)) for v in values)


def tolerance_for(*values) -> float:
    return 0 if is_exact(*values) else EPS_EQUAL


def singular_floor_for(*values) -> float:
    return 0 if is_exact(*values) else EPS_SINGULAR


def normalize_triple(t):
    """Rescale so the max-absolute component is 1 (prevents drift on orbits)."""
    m = max(abs(t[0]), abs(t[1]), abs(t[2]))
    if m == 0:
        raise ValueError("zero triple is not a projective element")
    return (t[0] / m, t[1] / m, t[2] / m)
