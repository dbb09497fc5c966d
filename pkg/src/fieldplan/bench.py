"""Benchmark harness: synthetic fields, the all-combinations matrix and
the timing-versus-area study.

The original benchmark fields are not redistributable, so the harness
generates seeded synthetic convex fields (hulls of 8-30 uniform points,
aspect ratios spanning 1 to 6) and also accepts user-supplied field files
through the CLI.  All geometry is deterministic given the seed; only the
timing columns vary between runs.
"""

from __future__ import annotations

import csv
import math
import statistics
import time
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import FieldPlanError
from .geometry import Point, Polygon, area, centroid, convex_hull
from .headland import Robot, constant_headland, default_headland_width
from .pipeline import PlanConfig, plan
from .route import Pattern, plan_route, route_length_inplace
from .swath import (
    DEFAULT_ANGLE_STEP,
    SwathObjective,
    brute_force_angle,
    obj_field_coverage,
)
from .turning import CurveKind, plan_path

CSV_COLUMNS = [
    "field",
    "objective",
    "pattern",
    "curve",
    "angle_rad",
    "n_swaths",
    "coverage",
    "L0_m",
    "LR_m",
    "overhead",
    "t_headland_s",
    "t_swath_s",
    "t_route_s",
    "t_path_s",
    "status",
]

DEFAULT_OBJECTIVES = tuple(SwathObjective)
DEFAULT_PATTERNS = (Pattern.BOUSTROPHEDON, Pattern.SNAKE, Pattern.SPIRAL)
DEFAULT_CURVES = (CurveKind.DUBINS, CurveKind.REEDS_SHEPP)


@dataclass(frozen=True)
class FieldCase:
    name: str
    boundary: Polygon
    target_area: float


@dataclass(frozen=True)
class TimingModelFit:
    """Least-squares fit of computation time against field size.

    ``xs`` is the abscissa the line was fitted on: sqrt(area)/op_width for
    the swath-count and swath-length objectives, the raw area for field
    coverage.
    """

    c0: float
    c1: float
    r_squared: float
    model: str  # "sqrt-area" or "linear-area"
    areas: tuple[float, ...]
    times_s: tuple[float, ...]
    xs: tuple[float, ...]


def rescale_to_area(poly: Polygon, target: float) -> Polygon:
    """Uniformly scale a polygon about its centroid to the target area."""
    if target <= 0.0:
        raise ValueError("target area must be positive")
    factor = math.sqrt(target / area(poly))
    cx, cy = centroid(poly)
    return Polygon(
        [Point(cx + factor * (p.x - cx), cy + factor * (p.y - cy)) for p in poly.vertices]
    )


def generate_convex_fields(
    n: int, seed: int, target_area: float = 10_000.0
) -> list[FieldCase]:
    """Seeded synthetic convex fields with aspect ratios spanning [1, 6]."""
    if n < 1:
        raise ValueError("need at least one field")
    rng = np.random.default_rng(seed)
    aspects = np.linspace(1.0, 6.0, n) if n > 1 else np.array([1.0])
    cases = []
    for i in range(n):
        n_points = int(rng.integers(8, 31))
        pts = rng.uniform(0.0, 1.0, size=(n_points, 2)) * [aspects[i], 1.0]
        hull = convex_hull(pts)
        boundary = rescale_to_area(hull, target_area)
        cases.append(FieldCase(name=f"synthetic-{i:02d}", boundary=boundary, target_area=target_area))
    return cases


def run_matrix(
    fields: Sequence[FieldCase],
    robot: Robot,
    objectives: Sequence[SwathObjective] = DEFAULT_OBJECTIVES,
    patterns: Sequence[Pattern] = DEFAULT_PATTERNS,
    curves: Sequence[CurveKind] = DEFAULT_CURVES,
    headland_width: float | None = None,
    angle_step: float = DEFAULT_ANGLE_STEP,
    spiral_bulk: int = 6,
    sample_step: float = 0.5,
) -> list[dict]:
    """One row per field x objective x pattern x curve.

    Stages shared between rows (headland per field, brute force per field
    and objective, route per pattern) are computed once and their timings
    repeated in every derived row.  Failures are recorded per row in the
    ``status`` column and the run continues.
    """
    if not fields or not objectives or not patterns or not curves:
        raise ValueError("all benchmark axes must be non-empty")
    width = headland_width if headland_width is not None else default_headland_width(robot)

    rows: list[dict] = []
    for case in fields:
        t0 = time.perf_counter()
        headland = constant_headland(case.boundary, width)
        t_headland = time.perf_counter() - t0
        for objective in objectives:
            try:
                if headland.mainland is None:
                    raise FieldPlanError("empty mainland")
                t0 = time.perf_counter()
                swaths = brute_force_angle(headland.mainland, robot, objective, angle_step)
                t_swath = time.perf_counter() - t0
                if len(swaths) == 0:
                    raise FieldPlanError("no swaths fit the mainland")
                coverage = obj_field_coverage(swaths, headland.mainland)
            except FieldPlanError as exc:
                for pattern in patterns:
                    for curve in curves:
                        rows.append(
                            _error_row(case, objective, pattern, curve, t_headland, exc)
                        )
                continue
            for pattern in patterns:
                t0 = time.perf_counter()
                route = plan_route(swaths, pattern, spiral_bulk)
                l0 = route_length_inplace(route)
                t_route = time.perf_counter() - t0
                for curve in curves:
                    try:
                        t0 = time.perf_counter()
                        path = plan_path(route, robot, curve, sample_step)
                        t_path = time.perf_counter() - t0
                        lr = path.total_length
                        rows.append(
                            {
                                "field": case.name,
                                "objective": objective.value,
                                "pattern": pattern.value,
                                "curve": curve.value,
                                "angle_rad": swaths.angle,
                                "n_swaths": len(swaths),
                                "coverage": coverage,
                                "L0_m": l0,
                                "LR_m": lr,
                                "overhead": (lr - l0) / lr if lr > 0 else 0.0,
                                "t_headland_s": t_headland,
                                "t_swath_s": t_swath,
                                "t_route_s": t_route,
                                "t_path_s": t_path,
                                "status": "ok",
                            }
                        )
                    except FieldPlanError as exc:
                        rows.append(
                            _error_row(case, objective, pattern, curve, t_headland, exc)
                        )
    return rows


def _error_row(case, objective, pattern, curve, t_headland, exc) -> dict:
    return {
        "field": case.name,
        "objective": objective.value,
        "pattern": pattern.value,
        "curve": curve.value,
        "angle_rad": "",
        "n_swaths": "",
        "coverage": "",
        "L0_m": "",
        "LR_m": "",
        "overhead": "",
        "t_headland_s": t_headland,
        "t_swath_s": "",
        "t_route_s": "",
        "t_path_s": "",
        "status": f"{getattr(exc, 'code', 'E_INTERNAL')}: {exc}",
    }


def format_matrix_rows(rows: Iterable[dict]) -> list[list[str]]:
    """Render rows for CSV output: geometry columns at full float precision
    (bitwise reproducible), timing columns rounded to microseconds."""
    timing_cols = {"t_headland_s", "t_swath_s", "t_route_s", "t_path_s"}
    rendered = []
    for row in rows:
        out = []
        for col in CSV_COLUMNS:
            value = row[col]
            if isinstance(value, float):
                out.append(f"{value:.6f}" if col in timing_cols else repr(value))
            else:
                out.append(str(value))
        rendered.append(out)
    return rendered


def write_matrix_csv(rows: Iterable[dict], path) -> None:
    with open(path, "w", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(CSV_COLUMNS)
        writer.writerows(format_matrix_rows(rows))


def square_field(field_area: float) -> Polygon:
    side = math.sqrt(field_area)
    return Polygon([(0, 0), (side, 0), (side, side), (0, side)])


def run_timing_sweep(
    areas: Sequence[float],
    objective: SwathObjective,
    robot: Robot,
    repetitions: int = 5,
    angle_step: float = DEFAULT_ANGLE_STEP,
) -> TimingModelFit:
    """Time the full pipeline on square fields of the given areas.

    Uses the median of ``repetitions`` serial runs per area (monotonic
    clock).  Swath-count and swath-length objectives are fitted against
    sqrt(area)/op_width, field coverage against the area itself.
    """
    distinct = sorted(set(float(a) for a in areas))
    if len(distinct) < 4:
        raise ValueError("timing sweep needs at least 4 distinct areas")
    cfg = PlanConfig(
        swath_objective=objective,
        pattern=Pattern.BOUSTROPHEDON,
        curve=CurveKind.DUBINS,
        angle_step=angle_step,
        sample_step=0.5,
    )
    times = []
    for field_area in distinct:
        field_poly = square_field(field_area)
        samples = []
        for _ in range(repetitions):
            t0 = time.perf_counter()
            plan(field_poly, robot, cfg)
            samples.append(time.perf_counter() - t0)
        times.append(statistics.median(samples))

    if objective is SwathObjective.FIELD_COVERAGE:
        xs = np.asarray(distinct)
        model = "linear-area"
    else:
        xs = np.sqrt(np.asarray(distinct)) / robot.op_width
        model = "sqrt-area"
    ys = np.asarray(times)
    c0, c1 = np.polyfit(xs, ys, 1)
    predicted = c0 * xs + c1
    ss_res = float(np.sum((ys - predicted) ** 2))
    ss_tot = float(np.sum((ys - ys.mean()) ** 2))
    r_squared = 1.0 - ss_res / ss_tot if ss_tot > 0 else 0.0
    return TimingModelFit(
        c0=float(c0),
        c1=float(c1),
        r_squared=r_squared,
        model=model,
        areas=tuple(distinct),
        times_s=tuple(times),
        xs=tuple(float(x) for x in xs),
    )
