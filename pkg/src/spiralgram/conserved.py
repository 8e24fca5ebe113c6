"""The four multiplicative invariants of T_3 and drift measurement.

For corner invariants (x_0, ..., x_{2n-1}) the quantities are

    F1 = prod x_{2i} / (x_{2i} - 1)        F2 = prod x_{2i+1} / (x_{2i+1} - 1)
    F3 = prod x_{2i} / x_{2i+1}            F4 = prod (1 - x_{2i}) / (1 - x_{2i+1})

with F4 = F2*F3/F1 whenever everything is defined, so at most three are
independent (and the differential degenerates further on alternating tuples
(a, b, a, b, ...)).  A vanishing denominator tags the affected quantity as
infinite; a simultaneous vanishing numerator tags it undefined.  Entries
must be finite; tuples containing the infinity tag yield four undefined
quantities.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import UndefinedQuantity
from .polygon import CornerInvariants
from .scalars import INF, UNDEFINED, is_exact, is_finite_scalar

# Above this many factors, float products run in log-magnitude + sign form.
_LOG_PRODUCT_THRESHOLD = 64


def _product(pairs):
    """prod(num/den) over (num, den) pairs with infinity/undefined tagging."""
    num_zero = any(num == 0 for num, _ in pairs)
    den_zero = any(den == 0 for _, den in pairs)
    if den_zero:
        return UNDEFINED if num_zero else INF
    if num_zero:
        nums = [n for n, _ in pairs]
        dens = [d for _, d in pairs]
        return (nums[0] * 0) if is_exact(*nums, *dens) else 0.0
    if len(pairs) > _LOG_PRODUCT_THRESHOLD and not is_exact(
        *(v for pair in pairs for v in pair)
    ):
        sign = 1.0
        logmag = 0.0
        for num, den in pairs:
            if (num < 0) != (den < 0):
                sign = -sign
            logmag += math.log(abs(num)) - math.log(abs(den))
        return sign * math.exp(logmag)
    out = None
    for num, den in pairs:
        term = num / den
        out = term if out is None else out * term
    return out


@dataclass(frozen=True)
class ConservedQuantities:
    """Values of F1..F4 at one orbit point (scalars or INF/UNDEFINED tags)."""

    f1: object
    f2: object
    f3: object
    f4: object

    def as_tuple(self):
        return (self.f1, self.f2, self.f3, self.f4)

    def all_defined(self) -> bool:
        return all(is_finite_scalar(v) for v in self.as_tuple())

    def to_json(self):
        if not self.all_defined():
            raise UndefinedQuantity("cannot serialize tagged quantities")
        return [float(v) for v in self.as_tuple()]


def f_invariants(x: CornerInvariants) -> ConservedQuantities:
    """Evaluate F1..F4 on a tuple of corner invariants."""
    if not all(is_finite_scalar(v) for v in x):
        return ConservedQuantities(UNDEFINED, UNDEFINED, UNDEFINED, UNDEFINED)
    evens = x.evens()
    odds = x.odds()
    f1 = _product([(v, v - 1) for v in evens])
    f2 = _product([(v, v - 1) for v in odds])
    f3 = _product(list(zip(evens, odds)))
    f4 = _product([(1 - e, 1 - o) for e, o in zip(evens, odds)])
    return ConservedQuantities(f1, f2, f3, f4)


def invariant_drift(trajectory):
    """Max relative drift of each quantity along a trajectory.

    Accepts anything with a `conserved` list of ConservedQuantities (one per
    recorded state).  Deviations are measured against the initial value with
    a 1e-300 floor so exact zeros stay exact.
    """
    states = trajectory.conserved
    if not states:
        raise UndefinedQuantity("empty trajectory")
    for s in states:
        if not s.all_defined():
            raise UndefinedQuantity("a step has an undefined quantity")
    base = states[0].as_tuple()
    drifts = []
    for q in range(4):
        ref = max(abs(base[q]), 1e-300)
        worst = 0
        for s in states:
            dev = abs(s.as_tuple()[q] - base[q]) / ref
            if dev > worst:
                worst = dev
        drifts.append(worst)
    return tuple(drifts)
