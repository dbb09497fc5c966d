"""Swath generation: parallel passes over the mainland at a sweep angle.

Swaths are straight, non-overlapping centerlines spaced exactly one
operational width apart.  After rotating the mainland so the sweep
direction is horizontal, line ``k`` sits at ``y_min + op_width * (k + 1/2)``,
which makes an 80 m extent tile exactly into 32 lanes of 2.5 m.  The sweep
angle is canonical modulo pi, so an angle and its opposite produce the
same geometry.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .geometry import LineString, Point, Polygon, area, intersect_convex
from .headland import Robot

# Chords shorter than this are tangency artifacts, not swaths (m).
MIN_SWATH_LENGTH = 1e-3

DEFAULT_ANGLE_STEP = math.pi / 180.0


class SwathObjective(Enum):
    """Objective functions of the swath generator with their direction."""

    SWATH_COUNT = "swath-count"
    FIELD_COVERAGE = "field-coverage"
    SWATH_LENGTH = "swath-length"

    @property
    def maximize(self) -> bool:
        return self is SwathObjective.FIELD_COVERAGE


@dataclass(frozen=True)
class Swath:
    """One straight pass: centerline plus the implement width it covers."""

    centerline: LineString
    width: float
    id: int

    @property
    def length(self) -> float:
        return self.centerline.length

    def footprint(self) -> Polygon:
        """Covered rectangle: centerline swept laterally by width/2, flat caps."""
        (sx, sy), (ex, ey) = self.centerline.start, self.centerline.end
        ux, uy = ex - sx, ey - sy
        norm = math.hypot(ux, uy)
        nx, ny = -uy / norm * self.width / 2.0, ux / norm * self.width / 2.0
        return Polygon(
            [
                (sx - nx, sy - ny),
                (ex - nx, ey - ny),
                (ex + nx, ey + ny),
                (sx + nx, sy + ny),
            ]
        )


@dataclass(frozen=True)
class SwathSet:
    """Parallel swaths ordered by transverse offset."""

    angle: float
    swaths: tuple[Swath, ...]
    op_width: float

    def __len__(self) -> int:
        return len(self.swaths)


def canonical_angle(angle: float) -> float:
    """Sweep angles are line directions, identical modulo pi."""
    a = math.fmod(angle, math.pi)
    if a < 0.0:
        a += math.pi
    return a if a < math.pi else 0.0


def generate_swaths(mainland: Polygon | None, angle: float, op_width: float) -> SwathSet:
    """Generate parallel swaths over the mainland at a sweep angle.

    Lines with direction ``angle`` spaced ``op_width`` apart span the
    mainland's rotated extent; each is clipped to the polygon and chords
    below 1 mm are dropped.  An empty mainland yields an empty set.
    """
    if op_width <= 0.0:
        raise ValueError("op_width must be positive")
    a = canonical_angle(angle)
    if mainland is None:
        return SwathSet(angle=a, swaths=(), op_width=op_width)

    c, s = math.cos(a), math.sin(a)
    verts = mainland.array
    rx = verts[:, 0] * c + verts[:, 1] * s
    ry = -verts[:, 0] * s + verts[:, 1] * c
    y_min = float(ry.min())
    y_max = float(ry.max())
    extent = y_max - y_min

    n_lines = max(0, math.ceil(extent / op_width - 0.5))
    if n_lines == 0:
        return SwathSet(angle=a, swaths=(), op_width=op_width)
    ys = y_min + op_width * (np.arange(n_lines) + 0.5)
    ys = ys[ys < y_max]
    if ys.size == 0:
        return SwathSet(angle=a, swaths=(), op_width=op_width)

    ax, ay = rx, ry
    bx, by = np.roll(rx, -1), np.roll(ry, -1)
    dy = by - ay
    crossing = dy != 0.0
    lo = np.minimum(ay, by)
    hi = np.maximum(ay, by)
    yy = ys[:, None]
    mask = (lo[None, :] <= yy) & (yy <= hi[None, :]) & crossing[None, :]
    with np.errstate(divide="ignore", invalid="ignore"):
        t = (yy - ay[None, :]) / np.where(crossing, dy, 1.0)[None, :]
        xs = ax[None, :] + t * (bx - ax)[None, :]
    x_lo = np.where(mask, xs, np.inf).min(axis=1)
    x_hi = np.where(mask, xs, -np.inf).max(axis=1)
    chord = x_hi - x_lo

    swaths = []
    for k in np.nonzero(chord > MIN_SWATH_LENGTH)[0]:
        y = ys[k]
        p0 = Point(x_lo[k] * c - y * s, x_lo[k] * s + y * c)
        p1 = Point(x_hi[k] * c - y * s, x_hi[k] * s + y * c)
        swaths.append(
            Swath(centerline=LineString([p0, p1]), width=op_width, id=len(swaths))
        )
    return SwathSet(angle=a, swaths=tuple(swaths), op_width=op_width)


def obj_swath_count(swath_set: SwathSet) -> int:
    """Number of swaths (minimization objective)."""
    return len(swath_set.swaths)


def obj_swath_length(swath_set: SwathSet) -> float:
    """Total centerline length in meters (minimization objective)."""
    return sum(sw.length for sw in swath_set.swaths)


def obj_field_coverage(swath_set: SwathSet, mainland: Polygon | None) -> float:
    """Fraction of the mainland covered by the swath footprints.

    Swaths are spaced exactly one width apart, so their footprints are
    interior-disjoint and the union area is the sum of the per-footprint
    intersections with the mainland.
    """
    if mainland is None or not swath_set.swaths:
        return 0.0
    covered = 0.0
    for sw in swath_set.swaths:
        piece = intersect_convex(sw.footprint(), mainland)
        if piece is not None:
            covered += area(piece)
    return covered / area(mainland)


def evaluate_objective(
    objective: SwathObjective, swath_set: SwathSet, mainland: Polygon | None
) -> float:
    if objective is SwathObjective.SWATH_COUNT:
        return float(obj_swath_count(swath_set))
    if objective is SwathObjective.SWATH_LENGTH:
        return obj_swath_length(swath_set)
    return obj_field_coverage(swath_set, mainland)


def brute_force_angle(
    mainland: Polygon | None,
    robot: Robot,
    objective: SwathObjective,
    step: float = DEFAULT_ANGLE_STEP,
) -> SwathSet:
    """Scan sweep angles {0, step, 2*step, ... < pi} and keep the best set.

    Ties break toward the smallest angle, so the result does not depend on
    evaluation order.
    """
    if not 0.0 < step <= math.pi:
        raise ValueError("angle step must be in (0, pi]")
    if mainland is None:
        return SwathSet(angle=0.0, swaths=(), op_width=robot.op_width)

    best_set: SwathSet | None = None
    best_score = -math.inf if objective.maximize else math.inf
    k = 0
    while True:
        angle = k * step
        if angle >= math.pi - 1e-12:
            break
        candidate = generate_swaths(mainland, angle, robot.op_width)
        score = evaluate_objective(objective, candidate, mainland)
        if (objective.maximize and score > best_score) or (
            not objective.maximize and score < best_score
        ):
            best_score = score
            best_set = candidate
        k += 1
    assert best_set is not None
    return best_set
