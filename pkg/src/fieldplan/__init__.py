"""Coverage path planning for convex agricultural fields.

The pipeline runs four stages, each feeding the next: headland generation
(reserve a turning strip), swath generation (parallel passes at the best
sweep angle), route planning (order and orient the passes) and path
planning (connect them with drivable turns).
"""

from .errors import (
    EmptyMainlandError,
    FieldFileError,
    FieldPlanError,
    GeographicCoordinateError,
    InvalidGeometryError,
    InvalidRouteError,
    NonConvexError,
    TurnRadiusError,
)
from .geometry import LineString, Point, Polygon, Pose
from .headland import HeadlandResult, Robot, constant_headland, default_headland_width
from .pipeline import PlanConfig, PlanReport, plan
from .route import DirectedSwath, Pattern, Route, plan_route, route_length_inplace
from .swath import (
    Swath,
    SwathObjective,
    SwathSet,
    brute_force_angle,
    generate_swaths,
    obj_field_coverage,
    obj_swath_count,
    obj_swath_length,
)
from .turning import CurveKind, Path, PathState, Turn, dubins_turn, plan_path, reeds_shepp_turn

__version__ = "0.1.0"

__all__ = [
    "CurveKind",
    "DirectedSwath",
    "EmptyMainlandError",
    "FieldFileError",
    "FieldPlanError",
    "GeographicCoordinateError",
    "HeadlandResult",
    "InvalidGeometryError",
    "InvalidRouteError",
    "LineString",
    "NonConvexError",
    "Path",
    "PathState",
    "Pattern",
    "PlanConfig",
    "PlanReport",
    "Point",
    "Polygon",
    "Pose",
    "Robot",
    "Route",
    "Swath",
    "SwathObjective",
    "SwathSet",
    "Turn",
    "TurnRadiusError",
    "brute_force_angle",
    "constant_headland",
    "default_headland_width",
    "dubins_turn",
    "generate_swaths",
    "obj_field_coverage",
    "obj_swath_count",
    "obj_swath_length",
    "plan",
    "plan_path",
    "plan_route",
    "reeds_shepp_turn",
    "route_length_inplace",
]
