"""Headland generation: reserve a turning strip along the field boundary.

The single generator erodes the field by a constant width; the score is
the ratio of the remaining (mainland) area to the original field area.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import InvalidGeometryError
from .geometry import Polygon, area, buffer_inward


@dataclass(frozen=True)
class Robot:
    """Vehicle constraints relevant to coverage planning.

    ``op_width`` is the effective implement width and sets the swath
    spacing; it may be narrower than the vehicle itself.
    """

    op_width: float
    robot_width: float
    min_turn_radius: float = 0.0
    max_speed: float | None = None

    def __post_init__(self) -> None:
        for name in ("op_width", "robot_width", "min_turn_radius"):
            value = getattr(self, name)
            if not math.isfinite(value):
                raise ValueError(f"{name} must be finite")
        if self.op_width <= 0.0:
            raise ValueError("op_width must be positive")
        if self.robot_width <= 0.0:
            raise ValueError("robot_width must be positive")
        if self.min_turn_radius < 0.0:
            raise ValueError("min_turn_radius must be >= 0")
        if self.max_speed is not None and not (
            math.isfinite(self.max_speed) and self.max_speed > 0.0
        ):
            raise ValueError("max_speed must be positive when given")


@dataclass(frozen=True)
class HeadlandResult:
    """Mainland polygon left after removing the headland strip."""

    mainland: Polygon | None
    headland_width: float
    area_ratio: float


def constant_headland(field: Polygon, width: float) -> HeadlandResult:
    """Erode the field boundary inward by a constant ``width``.

    An empty mainland is a legal result with ``area_ratio`` 0 so sweeps
    over widths past the collapse point stay total.
    """
    if not isinstance(field, Polygon):
        raise InvalidGeometryError("field must be a Polygon")
    if width < 0.0:
        raise ValueError("headland width must be >= 0")
    mainland = buffer_inward(field, width)
    ratio = 0.0 if mainland is None else area(mainland) / area(field)
    return HeadlandResult(mainland=mainland, headland_width=width, area_ratio=ratio)


def default_headland_width(robot: Robot, multiple: float = 3.0) -> float:
    """Headland width as a multiple of the operational width."""
    if multiple <= 0.0:
        raise ValueError("multiple must be positive")
    return multiple * robot.op_width
