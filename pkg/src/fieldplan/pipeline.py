"""End-to-end planning: headland -> swaths -> route -> path.

The four stages run strictly in sequence, each consuming the previous
stage's output, under a single declarative :class:`PlanConfig`.  Timings
are recorded per stage with a monotonic clock; the geometry of the result
is deterministic for fixed inputs.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field

from .errors import EmptyMainlandError
from .geometry import Polygon, distance_outside
from .headland import HeadlandResult, Robot, constant_headland, default_headland_width
from .route import Pattern, Route, plan_route, route_length_inplace
from .swath import (
    DEFAULT_ANGLE_STEP,
    SwathObjective,
    SwathSet,
    brute_force_angle,
    evaluate_objective,
)
from .turning import CurveKind, Path, plan_path


@dataclass(frozen=True)
class PlanConfig:
    """Declarative configuration for one pipeline run.

    ``headland_width`` set to None means ``headland_multiple`` times the
    robot's operational width (the usual three-widths rule).
    """

    headland_width: float | None = None
    headland_multiple: float = 3.0
    swath_objective: SwathObjective = SwathObjective.SWATH_COUNT
    angle_step: float = DEFAULT_ANGLE_STEP
    pattern: Pattern = Pattern.BOUSTROPHEDON
    spiral_bulk: int = 6
    custom_order: tuple[int, ...] | None = None
    curve: CurveKind = CurveKind.DUBINS
    sample_step: float = 0.1

    def __post_init__(self) -> None:
        if not 0.0 < self.angle_step <= math.pi:
            raise ValueError("angle_step must be in (0, pi]")
        if self.sample_step <= 0.0:
            raise ValueError("sample_step must be positive")
        if self.spiral_bulk < 1:
            raise ValueError("spiral_bulk must be >= 1")
        if self.headland_width is not None and self.headland_width < 0.0:
            raise ValueError("headland_width must be >= 0")
        if self.headland_multiple <= 0.0:
            raise ValueError("headland_multiple must be positive")

    def resolved_headland_width(self, robot: Robot) -> float:
        if self.headland_width is not None:
            return self.headland_width
        return default_headland_width(robot, self.headland_multiple)


@dataclass(frozen=True)
class PlanReport:
    """Everything one pipeline run produced, stage by stage."""

    headland: HeadlandResult
    swaths: SwathSet
    objective: SwathObjective
    objective_value: float
    route: Route
    l0: float
    path: Path
    timings: dict[str, float] = field(compare=False)
    max_turn_excursion: float = 0.0

    @property
    def lr(self) -> float:
        return self.path.total_length

    @property
    def turn_overhead(self) -> float:
        """Non-productive fraction of the path, (LR - L0) / LR."""
        if self.lr <= 0.0:
            return 0.0
        return (self.lr - self.l0) / self.lr


def plan(field_poly: Polygon, robot: Robot, cfg: PlanConfig | None = None) -> PlanReport:
    """Run the full pipeline on a convex field.

    Raises :class:`EmptyMainlandError` (carrying the headland result) when
    the headland erosion consumes the field or leaves no room for swaths.
    """
    cfg = cfg or PlanConfig()
    t_start = time.perf_counter()

    t0 = time.perf_counter()
    headland = constant_headland(field_poly, cfg.resolved_headland_width(robot))
    t_headland = time.perf_counter() - t0
    if headland.mainland is None:
        raise EmptyMainlandError(
            f"headland width {headland.headland_width} m erodes the field away",
            headland=headland,
        )

    t0 = time.perf_counter()
    swaths = brute_force_angle(
        headland.mainland, robot, cfg.swath_objective, cfg.angle_step
    )
    objective_value = evaluate_objective(cfg.swath_objective, swaths, headland.mainland)
    t_swath = time.perf_counter() - t0
    if len(swaths) == 0:
        raise EmptyMainlandError(
            "mainland too narrow for even one swath", headland=headland
        )

    t0 = time.perf_counter()
    route = plan_route(swaths, cfg.pattern, cfg.spiral_bulk, cfg.custom_order)
    l0 = route_length_inplace(route)
    t_route = time.perf_counter() - t0

    t0 = time.perf_counter()
    path = plan_path(route, robot, cfg.curve, cfg.sample_step)
    t_path = time.perf_counter() - t0

    excursion = 0.0
    for begin, end in path.turn_spans:
        for state in path.states[begin:end]:
            excursion = max(excursion, distance_outside(field_poly, state.pose.position))

    timings = {
        "headland": t_headland,
        "swath": t_swath,
        "route": t_route,
        "path": t_path,
        "total": time.perf_counter() - t_start,
    }
    return PlanReport(
        headland=headland,
        swaths=swaths,
        objective=cfg.swath_objective,
        objective_value=objective_value,
        route=route,
        l0=l0,
        path=path,
        timings=timings,
        max_turn_excursion=excursion,
    )
