"""Deep diagonal maps T_k on twisted polygons in the real projective plane.

Core layers: projective primitives, twisted polygons with corner invariants,
the T_k maps (geometric and birational-coordinate forms), tic-tac-toe / spiral
classification, the four conserved quantities of T_3, and an orbit engine for
precompactness experiments.
"""

from .classification import (
    GridSquare,
    SpiralReport,
    grid_classify,
    interval_of,
    is_k_nice,
    spiral_window_check,
    transversal_check,
)
from .conserved import ConservedQuantities, f_invariants, invariant_drift
from .dynamics import (
    Labeling,
    t3_coords_forward,
    t3_coords_inverse,
    t_k_forward,
    t_k_inverse,
)
from .errors import (
    BoundViolation,
    DegenerateConfiguration,
    DegenerateInput,
    DegenerateInvariants,
    DegeneratePosition,
    MonodromyFailure,
    NonAffineVertex,
    NotCollinear,
    NotConcurrent,
    NotKNice,
    ProjectionFailure,
    SingularOrbitPoint,
    SpiralgramError,
    UndefinedQuantity,
)
from .orbits import (
    BoundsReport,
    OrbitTrajectory,
    Termination,
    iterate,
    orbit_projection,
    precompactness_report,
    sample_in_square,
    sample_spiral_polygon,
)
from .polygon import (
    CornerInvariants,
    SEED_ALPHA,
    SEED_UNIT_SQUARE,
    TwistedPolygon,
    corner_invariants,
    corner_pair,
    extend_from_invariants,
    reconstruct,
)
from .projective import (
    AffinePoint,
    HomogeneousPoint,
    ProjectiveLine,
    ProjectiveTransform,
    cross_ratio_lines,
    cross_ratio_points,
    in_triangle_interior,
    join,
    meet,
    orientation,
    transform_from_correspondence,
)
from .scalars import INF, UNDEFINED

__version__ = "0.1.0"
