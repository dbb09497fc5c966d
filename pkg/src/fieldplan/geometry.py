"""Planar geometry kernel for the planning pipeline.

All coordinates are meters in a local planar frame; angles are radians.
Polygons are convex, simple, counter-clockwise exterior rings without
holes.  Tolerances follow the field scale (tens to hundreds of meters):
cross products below 1e-9 count as collinear and segments shorter than
1e-6 m count as degenerate.

Every operation here is a pure function over immutable values.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, NamedTuple, Sequence

import numpy as np

from .errors import InvalidGeometryError, NonConvexError

# Collinearity tolerance for cross products (m^2).
CROSS_TOL = 1e-9
# Below this length a clipped segment is a tangency artifact, not a chord (m).
SEGMENT_TOL = 1e-6
# Consecutive ring vertices closer than this are duplicates (m).
VERTEX_TOL = 1e-9

TWO_PI = 2.0 * math.pi


class Point(NamedTuple):
    """A point in the local metric frame."""

    x: float
    y: float


def _as_point(p) -> Point:
    x, y = float(p[0]), float(p[1])
    if not (math.isfinite(x) and math.isfinite(y)):
        raise InvalidGeometryError(f"non-finite coordinate ({x}, {y})")
    return Point(x, y)


def dist(a: Point, b: Point) -> float:
    return math.hypot(b[0] - a[0], b[1] - a[1])


def rotate(p: Point, pivot: Point, angle: float) -> Point:
    """Rotate ``p`` about ``pivot`` by ``angle`` (counter-clockwise)."""
    c, s = math.cos(angle), math.sin(angle)
    dx, dy = p[0] - pivot[0], p[1] - pivot[1]
    return Point(pivot[0] + c * dx - s * dy, pivot[1] + s * dx + c * dy)


def normalize_angle(theta: float) -> float:
    """Map an angle to [0, 2*pi)."""
    theta = math.fmod(theta, TWO_PI)
    if theta < 0.0:
        theta += TWO_PI
    return theta if theta < TWO_PI else 0.0


@dataclass(frozen=True)
class LineString:
    """An ordered polyline of at least two distinct points."""

    points: tuple[Point, ...]

    def __init__(self, points: Iterable) -> None:
        pts = tuple(_as_point(p) for p in points)
        if len(pts) < 2:
            raise InvalidGeometryError("a LineString needs at least 2 points")
        for a, b in zip(pts, pts[1:]):
            if dist(a, b) <= VERTEX_TOL:
                raise InvalidGeometryError("consecutive LineString points coincide")
        object.__setattr__(self, "points", pts)

    @property
    def length(self) -> float:
        return sum(dist(a, b) for a, b in zip(self.points, self.points[1:]))

    @property
    def start(self) -> Point:
        return self.points[0]

    @property
    def end(self) -> Point:
        return self.points[-1]

    def reversed(self) -> "LineString":
        return LineString(self.points[::-1])


@dataclass(frozen=True)
class Pose:
    """Position plus heading, the endpoint configuration for turn planning."""

    position: Point
    heading: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "position", _as_point(self.position))
        h = float(self.heading)
        if not math.isfinite(h):
            raise InvalidGeometryError("non-finite heading")
        object.__setattr__(self, "heading", normalize_angle(h))


@dataclass(frozen=True)
class Polygon:
    """A convex, simple, counter-clockwise polygon.

    The constructor accepts an open or closed ring, merges duplicate
    consecutive vertices, normalizes the orientation to counter-clockwise
    and rejects degenerate or non-convex rings.
    """

    vertices: tuple[Point, ...]

    def __init__(self, vertices: Iterable) -> None:
        pts = [_as_point(p) for p in vertices]
        if len(pts) >= 2 and dist(pts[0], pts[-1]) <= VERTEX_TOL:
            pts = pts[:-1]
        cleaned: list[Point] = []
        for p in pts:
            if not cleaned or dist(cleaned[-1], p) > VERTEX_TOL:
                cleaned.append(p)
        if len(cleaned) >= 2 and dist(cleaned[0], cleaned[-1]) <= VERTEX_TOL:
            cleaned.pop()
        if len(cleaned) < 3:
            raise InvalidGeometryError("polygon ring has fewer than 3 distinct vertices")

        signed = _signed_area(cleaned)
        if signed < 0.0:
            cleaned.reverse()
            signed = -signed
        if signed <= CROSS_TOL:
            raise InvalidGeometryError("polygon has (near-)zero area")

        n = len(cleaned)
        for i in range(n):
            a, b, c = cleaned[i - 1], cleaned[i], cleaned[(i + 1) % n]
            cross = (b[0] - a[0]) * (c[1] - b[1]) - (b[1] - a[1]) * (c[0] - b[0])
            if cross < -CROSS_TOL:
                raise NonConvexError(
                    f"polygon is not convex (reflex vertex at {b})"
                )
        object.__setattr__(self, "vertices", tuple(cleaned))

    @property
    def ring(self) -> tuple[Point, ...]:
        """The closed exterior ring (first vertex repeated at the end)."""
        return self.vertices + (self.vertices[0],)

    @cached_property
    def array(self) -> np.ndarray:
        """Vertices as an (n, 2) float array (open ring)."""
        return np.asarray(self.vertices, dtype=float)

    @cached_property
    def bounds(self) -> tuple[float, float, float, float]:
        xs = [p[0] for p in self.vertices]
        ys = [p[1] for p in self.vertices]
        return min(xs), min(ys), max(xs), max(ys)

    @cached_property
    def edges(self) -> tuple[tuple[Point, Point], ...]:
        return tuple((self.vertices[i - 1], self.vertices[i]) for i in range(len(self.vertices)))


def _signed_area(pts: Sequence[Point]) -> float:
    acc = 0.0
    n = len(pts)
    for i in range(n):
        x0, y0 = pts[i]
        x1, y1 = pts[(i + 1) % n]
        acc += x0 * y1 - x1 * y0
    return 0.5 * acc


def area(poly: Polygon) -> float:
    """Shoelace area of a polygon, strictly positive for valid input."""
    if len(poly.vertices) < 3:
        raise InvalidGeometryError("degenerate ring")
    return _signed_area(poly.vertices)


def centroid(poly: Polygon) -> Point:
    """Area-weighted centroid."""
    a = 0.0
    cx = cy = 0.0
    for (x0, y0), (x1, y1) in zip(poly.ring, poly.ring[1:]):
        w = x0 * y1 - x1 * y0
        a += w
        cx += (x0 + x1) * w
        cy += (y0 + y1) * w
    a *= 0.5
    return Point(cx / (6.0 * a), cy / (6.0 * a))


def contains_point(poly: Polygon, p, tol: float = 1e-9) -> bool:
    """True if ``p`` lies inside the convex polygon (boundary counts)."""
    x, y = p[0], p[1]
    for (ax, ay), (bx, by) in zip(poly.ring, poly.ring[1:]):
        if (bx - ax) * (y - ay) - (by - ay) * (x - ax) < -tol:
            return False
    return True


def distance_to_boundary(poly: Polygon, p) -> float:
    """Euclidean distance from ``p`` to the polygon boundary."""
    x, y = p[0], p[1]
    best = math.inf
    for (ax, ay), (bx, by) in zip(poly.ring, poly.ring[1:]):
        ex, ey = bx - ax, by - ay
        denom = ex * ex + ey * ey
        t = 0.0 if denom == 0.0 else ((x - ax) * ex + (y - ay) * ey) / denom
        t = min(1.0, max(0.0, t))
        best = min(best, math.hypot(x - (ax + t * ex), y - (ay + t * ey)))
    return best


def distance_outside(poly: Polygon, p) -> float:
    """Distance from ``p`` to the polygon, zero for interior points."""
    if contains_point(poly, p):
        return 0.0
    return distance_to_boundary(poly, p)


# ---------------------------------------------------------------------------
# Half-plane clipping
# ---------------------------------------------------------------------------

def _clip_ring_halfplane(
    ring: list[tuple[float, float]], nx: float, ny: float, qx: float, qy: float
) -> list[tuple[float, float]]:
    """Sutherland-Hodgman clip of a convex ring by dot(n, p - q) >= 0."""
    if not ring:
        return []
    out: list[tuple[float, float]] = []
    n = len(ring)
    eps = 1e-12
    da = nx * (ring[-1][0] - qx) + ny * (ring[-1][1] - qy)
    a = ring[-1]
    for i in range(n):
        b = ring[i]
        db = nx * (b[0] - qx) + ny * (b[1] - qy)
        if da >= -eps:
            out.append(a)
            if db < -eps:
                t = da / (da - db)
                out.append((a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1])))
        elif db >= -eps:
            t = da / (da - db)
            out.append((a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1])))
        a, da = b, db
    return _prune_ring(out)


def _prune_ring(ring: list[tuple[float, float]]) -> list[tuple[float, float]]:
    pruned: list[tuple[float, float]] = []
    for p in ring:
        if not pruned or math.hypot(p[0] - pruned[-1][0], p[1] - pruned[-1][1]) > VERTEX_TOL:
            pruned.append(p)
    while len(pruned) >= 2 and math.hypot(
        pruned[0][0] - pruned[-1][0], pruned[0][1] - pruned[-1][1]
    ) <= VERTEX_TOL:
        pruned.pop()
    return pruned


def _ring_to_polygon(ring: list[tuple[float, float]]) -> Polygon | None:
    if len(ring) < 3:
        return None
    if abs(_signed_area([Point(*p) for p in ring])) <= CROSS_TOL:
        return None
    return Polygon(ring)


def _inward_normals(poly: Polygon) -> list[tuple[float, float, float, float]]:
    """Per edge: unit inward normal (nx, ny) and an anchor vertex (qx, qy)."""
    out = []
    for (ax, ay), (bx, by) in poly.edges:
        ex, ey = bx - ax, by - ay
        norm = math.hypot(ex, ey)
        # CCW ring: the interior lies to the left of each edge.
        out.append((-ey / norm, ex / norm, ax, ay))
    return out


def buffer_inward(poly: Polygon, d: float) -> Polygon | None:
    """Erode a convex polygon by ``d`` meters.

    The result is the intersection of the polygon's edge half-planes each
    shifted inward by ``d``; ``None`` means the polygon eroded away.
    """
    if d < 0.0:
        raise ValueError("erosion distance must be >= 0")
    if d == 0.0:
        return poly

    normals = _inward_normals(poly)
    shifted = [(nx, ny, qx + d * nx, qy + d * ny) for nx, ny, qx, qy in normals]

    fast = _erode_by_adjacent_lines(poly, shifted)
    if fast is not None:
        return fast

    ring = [(p[0], p[1]) for p in poly.vertices]
    for nx, ny, qx, qy in shifted:
        ring = _clip_ring_halfplane(ring, nx, ny, qx, qy)
        if not ring:
            return None
    return _ring_to_polygon(ring)


def _erode_by_adjacent_lines(poly, shifted) -> Polygon | None:
    """Exact erosion when no edge vanishes: intersect adjacent shifted edges.

    Returns None when the configuration is not the simple one (an edge
    collapsed, near-parallel neighbors), signalling the caller to fall back
    to successive half-plane clipping.
    """
    n = len(shifted)
    ring: list[tuple[float, float]] = []
    for i in range(n):
        nx0, ny0, qx0, qy0 = shifted[i]
        nx1, ny1, qx1, qy1 = shifted[(i + 1) % n]
        det = nx0 * ny1 - ny0 * nx1
        if abs(det) < 1e-12:
            return None
        c0 = nx0 * qx0 + ny0 * qy0
        c1 = nx1 * qx1 + ny1 * qy1
        ring.append(((c0 * ny1 - c1 * ny0) / det, (nx0 * c1 - nx1 * c0) / det))
    slack = -1e-7
    for x, y in ring:
        for nx, ny, qx, qy in shifted:
            if nx * (x - qx) + ny * (y - qy) < slack:
                return None
    ring = _prune_ring(ring)
    if len(ring) < 3:
        return None
    pts = [Point(*p) for p in ring]
    if _signed_area(pts) <= CROSS_TOL:
        return None
    return Polygon(pts)


def intersect_convex(subject: Polygon, clip: Polygon) -> Polygon | None:
    """Intersection of two convex polygons (None when empty)."""
    ring = [(p[0], p[1]) for p in subject.vertices]
    for nx, ny, qx, qy in _inward_normals(clip):
        ring = _clip_ring_halfplane(ring, nx, ny, qx, qy)
        if not ring:
            return None
    return _ring_to_polygon(ring)


def clip_line(poly: Polygon, anchor, direction: float) -> LineString | None:
    """Clip the infinite line through ``anchor`` at ``direction`` to the polygon.

    For a convex polygon the result is a single chord, or ``None`` when the
    line misses the polygon or only grazes it (chord below 1e-6 m).
    """
    ax, ay = anchor[0], anchor[1]
    dx, dy = math.cos(direction), math.sin(direction)
    t_lo, t_hi = -math.inf, math.inf
    for nx, ny, qx, qy in _inward_normals(poly):
        denom = nx * dx + ny * dy
        offset = nx * (qx - ax) + ny * (qy - ay)
        if abs(denom) < 1e-15:
            if offset > 0.0:
                return None
            continue
        t = offset / denom
        if denom > 0.0:
            t_lo = max(t_lo, t)
        else:
            t_hi = min(t_hi, t)
    if not (math.isfinite(t_lo) and math.isfinite(t_hi)):
        return None
    if t_hi - t_lo <= SEGMENT_TOL:
        return None
    return LineString(
        [(ax + t_lo * dx, ay + t_lo * dy), (ax + t_hi * dx, ay + t_hi * dy)]
    )


# ---------------------------------------------------------------------------
# Union area by vertical slab decomposition
# ---------------------------------------------------------------------------

def union_area(polys: Iterable[Polygon | None]) -> float:
    """Exact area of the union of convex polygons.

    Decomposes the plane into vertical slabs cut at every vertex x and
    every pairwise edge-crossing x.  Within a slab the union of the
    polygons' cross-sections has constant structure and each bound is
    linear in x, so the midpoint rule integrates the union width exactly.
    """
    items = [p for p in polys if p is not None]
    if not items:
        return 0.0

    xs: list[float] = []
    all_edges: list[tuple[int, float, float, float, float]] = []
    for idx, poly in enumerate(items):
        for (ax, ay), (bx, by) in poly.edges:
            xs.append(ax)
            all_edges.append((idx, ax, ay, bx, by))

    m = len(all_edges)
    for i in range(m):
        pi, ax, ay, bx, by = all_edges[i]
        for j in range(i + 1, m):
            pj, cx, cy, dx, dy = all_edges[j]
            if pi == pj:
                continue
            x = _crossing_x(ax, ay, bx, by, cx, cy, dx, dy)
            if x is not None:
                xs.append(x)

    cuts = sorted(set(xs))
    total = 0.0
    for x0, x1 in zip(cuts, cuts[1:]):
        width = x1 - x0
        if width <= 1e-12:
            continue
        xm = 0.5 * (x0 + x1)
        intervals = []
        for poly in items:
            section = _cross_section(poly, xm)
            if section is not None:
                intervals.append(section)
        total += width * _union_length(intervals)
    return total


def _crossing_x(ax, ay, bx, by, cx, cy, dx, dy) -> float | None:
    rx, ry = bx - ax, by - ay
    sx, sy = dx - cx, dy - cy
    denom = rx * sy - ry * sx
    if abs(denom) < 1e-15:
        return None
    t = ((cx - ax) * sy - (cy - ay) * sx) / denom
    u = ((cx - ax) * ry - (cy - ay) * rx) / denom
    if 0.0 <= t <= 1.0 and 0.0 <= u <= 1.0:
        return ax + t * rx
    return None


def _cross_section(poly: Polygon, x: float) -> tuple[float, float] | None:
    """The y-interval of a convex polygon at abscissa ``x`` (interior cuts)."""
    lo, hi = math.inf, -math.inf
    for (ax, ay), (bx, by) in poly.edges:
        if (ax < x) == (bx < x):
            continue
        t = (x - ax) / (bx - ax)
        y = ay + t * (by - ay)
        lo = min(lo, y)
        hi = max(hi, y)
    if hi <= lo:
        return None
    return lo, hi


def _union_length(intervals: list[tuple[float, float]]) -> float:
    if not intervals:
        return 0.0
    intervals.sort()
    total = 0.0
    cur_lo, cur_hi = intervals[0]
    for lo, hi in intervals[1:]:
        if lo > cur_hi:
            total += cur_hi - cur_lo
            cur_lo, cur_hi = lo, hi
        else:
            cur_hi = max(cur_hi, hi)
    return total + (cur_hi - cur_lo)


def convex_hull(points: Iterable) -> Polygon:
    """Convex hull (Andrew monotone chain) of a point cloud."""
    pts = sorted({(float(p[0]), float(p[1])) for p in points})
    if len(pts) < 3:
        raise InvalidGeometryError("hull needs at least 3 distinct points")

    def half(seq):
        chain: list[tuple[float, float]] = []
        for p in seq:
            while len(chain) >= 2:
                ox, oy = chain[-2]
                axx, ayy = chain[-1]
                if (axx - ox) * (p[1] - oy) - (ayy - oy) * (p[0] - ox) <= CROSS_TOL:
                    chain.pop()
                else:
                    break
            chain.append(p)
        return chain

    lower = half(pts)
    upper = half(reversed(pts))
    ring = lower[:-1] + upper[:-1]
    return Polygon(ring)
