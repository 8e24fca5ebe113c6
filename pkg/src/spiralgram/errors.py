"""Exception types raised by the geometric and dynamical layers."""


class SpiralgramError(Exception):
    """Base class for all library errors."""


class DegenerateInput(SpiralgramError):
    """Coincident points/lines or otherwise degenerate arguments."""


class NotCollinear(SpiralgramError):
    """Four points handed to the cross ratio do not share a line."""


class NotConcurrent(SpiralgramError):
    """Four lines handed to the cross ratio do not share a point."""


class DegeneratePosition(SpiralgramError):
    """A quadruple meant to be in general position has three collinear points."""


class DegenerateConfiguration(SpiralgramError):
    """A polygon window is too degenerate for corner-invariant extraction."""


class DegenerateInvariants(SpiralgramError):
    """Corner-invariant values on which reconstruction is undefined."""


class MonodromyFailure(SpiralgramError):
    """Reconstruction produced a degenerate closing quadruple."""


class NotKNice(SpiralgramError):
    """Polygon fails the general-position requirement of the diagonal map."""


class NonAffineVertex(SpiralgramError):
    """A vertex needed by a window check has no affine coordinates."""

    def __init__(self, index, message=None):
        self.index = index
        super().__init__(message or f"vertex {index} is not in the affine patch")


class SingularOrbitPoint(SpiralgramError):
    """A denominator of the coordinate map vanished; carries the failing slot."""

    def __init__(self, index, message=None):
        self.index = index
        super().__init__(message or f"coordinate map undefined at slot {index}")


class UndefinedQuantity(SpiralgramError):
    """A conserved quantity is undefined somewhere along a trajectory."""


class BoundViolation(SpiralgramError):
    """An orbit escaped the interval its grid square confines it to."""

    def __init__(self, step, index, message=None):
        self.step = step
        self.index = index
        super().__init__(message or f"bound violated at step {step}, slot {index}")


class ProjectionFailure(SpiralgramError):
    """Orbit projection hit a degenerate normalization frame."""

    def __init__(self, step, message=None):
        self.step = step
        super().__init__(message or f"projection frame degenerate at step {step}")
