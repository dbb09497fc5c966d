"""Route planning: order and orient the swaths with a preset pattern.

Patterns operate on swath indices 0..N-1 in transverse order:

* boustrophedon: sequential 0,1,2,...
* snake: ascending evens, then descending odds (0,2,4,5,3,1)
* spiral(bulk): consecutive clusters of ``bulk`` swaths, snake inside each
* custom: a caller-supplied permutation

Orientation follows the nearest-endpoint rule: the first swath runs
forward, every later swath starts at whichever endpoint is closer to the
previous traversal end (ties keep forward), which is what the alternating
pattern semantics imply and never lengthens a connection.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Sequence

from .errors import InvalidRouteError
from .geometry import Point, dist
from .swath import Swath, SwathSet


class Pattern(Enum):
    BOUSTROPHEDON = "boustrophedon"
    SNAKE = "snake"
    SPIRAL = "spiral"
    CUSTOM = "custom"


@dataclass(frozen=True)
class DirectedSwath:
    """A swath with a traversal direction."""

    swath: Swath
    reversed: bool

    @property
    def start(self) -> Point:
        pts = self.swath.centerline.points
        return pts[-1] if self.reversed else pts[0]

    @property
    def end(self) -> Point:
        pts = self.swath.centerline.points
        return pts[0] if self.reversed else pts[-1]

    @property
    def length(self) -> float:
        return self.swath.length


@dataclass(frozen=True)
class Route:
    """Ordered, directed swaths; a permutation of the input SwathSet."""

    ordered: tuple[DirectedSwath, ...]
    pattern: Pattern

    def __len__(self) -> int:
        return len(self.ordered)


def snake_order(n: int) -> list[int]:
    """Ascending evens then descending odds; the odd-N middle turnaround
    goes directly from the last even to the largest odd."""
    return list(range(0, n, 2)) + list(range(n - 1 - (n % 2), 0, -2))


def spiral_order(n: int, bulk: int) -> list[int]:
    if bulk < 1:
        raise ValueError("spiral bulk must be >= 1")
    order: list[int] = []
    for base in range(0, n, bulk):
        cluster = min(bulk, n - base)
        order.extend(base + i for i in snake_order(cluster))
    return order


def pattern_order(
    pattern: Pattern,
    n: int,
    spiral_bulk: int = 6,
    custom_order: Sequence[int] | None = None,
) -> list[int]:
    if pattern is Pattern.BOUSTROPHEDON:
        return list(range(n))
    if pattern is Pattern.SNAKE:
        return snake_order(n)
    if pattern is Pattern.SPIRAL:
        return spiral_order(n, spiral_bulk)
    if custom_order is None:
        raise InvalidRouteError("custom pattern requires a swath order")
    order = [int(i) for i in custom_order]
    if sorted(order) != list(range(n)):
        raise InvalidRouteError(
            f"custom order must be a permutation of 0..{n - 1}, got {order}"
        )
    return order


def plan_route(
    swath_set: SwathSet,
    pattern: Pattern,
    spiral_bulk: int = 6,
    custom_order: Sequence[int] | None = None,
) -> Route:
    """Order the swaths by ``pattern`` and orient them nearest-endpoint."""
    swaths = swath_set.swaths
    order = pattern_order(pattern, len(swaths), spiral_bulk, custom_order)

    directed: list[DirectedSwath] = []
    prev_end: Point | None = None
    for idx in order:
        sw = swaths[idx]
        if prev_end is None:
            choice = DirectedSwath(sw, reversed=False)
        else:
            forward = DirectedSwath(sw, reversed=False)
            backward = DirectedSwath(sw, reversed=True)
            # Strict comparison keeps forward on ties.
            choice = (
                backward
                if dist(prev_end, backward.start) < dist(prev_end, forward.start)
                else forward
            )
        directed.append(choice)
        prev_end = choice.end
    return Route(ordered=tuple(directed), pattern=pattern)


def route_length_inplace(route: Route) -> float:
    """Path length assuming in-place (zero-radius) turns.

    Sum of the swath lengths plus the Euclidean gaps between consecutive
    traversal endpoints.
    """
    total = sum(d.length for d in route.ordered)
    for prev, nxt in zip(route.ordered, route.ordered[1:]):
        total += dist(prev.end, nxt.start)
    return total


def connection_gaps(route: Route) -> list[float]:
    """Euclidean connection distances between consecutive directed swaths."""
    return [dist(a.end, b.start) for a, b in zip(route.ordered, route.ordered[1:])]
