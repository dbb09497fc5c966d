"""Field file parsing (WKT, GeoJSON) and path artifact writers.

Input coordinates are planar meters.  Geographic (degree) input is only
accepted together with a projection origin, in which case lon/lat pairs
are projected onto a local equirectangular plane; degree-sized rings
without an origin are rejected rather than silently planned in degrees.
"""

from __future__ import annotations

import csv
import json
import math
import re
from pathlib import Path as FilePath

from .errors import FieldFileError, GeographicCoordinateError
from .geometry import Polygon, area
from .turning import CurveKind, Path, step_pose

_EARTH_RADIUS_M = 6_371_008.8
# A genuine metric field is never smaller than 1 cm^2; a degree-valued ring
# always is.  Rings below this area without an origin are called geographic.
_GEOGRAPHIC_AREA_LIMIT = 1e-4
# Max heading change per emitted arc chord; keeps the flattened polyline
# length within ~4e-7 of the true arc length.
_ARC_FLATTEN_STEP_RAD = 0.003


def parse_wkt_polygon(text: str) -> list[tuple[float, float]]:
    """Exterior ring of a WKT POLYGON (additional rings are ignored)."""
    match = re.search(r"POLYGON\s*\(\((.*?)\)", text, re.IGNORECASE | re.DOTALL)
    if not match:
        raise FieldFileError("expected a WKT POLYGON with an exterior ring")
    ring = []
    for token in match.group(1).split(","):
        parts = token.split()
        if len(parts) < 2:
            raise FieldFileError(f"bad WKT coordinate pair: {token!r}")
        try:
            ring.append((float(parts[0]), float(parts[1])))
        except ValueError as exc:
            raise FieldFileError(f"bad WKT coordinate pair: {token!r}") from exc
    return ring


def parse_geojson_polygon(obj: dict) -> list[tuple[float, float]]:
    """Exterior ring of the first Polygon geometry in a GeoJSON document."""
    geometry = None
    kind = obj.get("type")
    if kind == "FeatureCollection":
        for feature in obj.get("features", []):
            candidate = feature.get("geometry") or {}
            if candidate.get("type") == "Polygon":
                geometry = candidate
                break
    elif kind == "Feature":
        candidate = obj.get("geometry") or {}
        if candidate.get("type") == "Polygon":
            geometry = candidate
    elif kind == "Polygon":
        geometry = obj
    if geometry is None:
        raise FieldFileError("no Polygon geometry found in GeoJSON document")
    rings = geometry.get("coordinates") or []
    if not rings:
        raise FieldFileError("GeoJSON Polygon has no rings")
    try:
        return [(float(x), float(y)) for x, y, *_ in rings[0]]
    except (TypeError, ValueError) as exc:
        raise FieldFileError("GeoJSON Polygon ring is not a list of positions") from exc


def _project_ring(ring, origin) -> list[tuple[float, float]]:
    lon0, lat0 = origin
    k = math.cos(math.radians(lat0)) * _EARTH_RADIUS_M
    return [
        (
            math.radians(lon - lon0) * k,
            math.radians(lat - lat0) * _EARTH_RADIUS_M,
        )
        for lon, lat in ring
    ]


def _looks_geographic(poly: Polygon) -> bool:
    xmin, ymin, xmax, ymax = poly.bounds
    in_degree_range = -180.0 <= xmin <= xmax <= 180.0 and -90.0 <= ymin <= ymax <= 90.0
    return in_degree_range and area(poly) < _GEOGRAPHIC_AREA_LIMIT


def load_field(path, fmt: str = "auto", origin: tuple[float, float] | None = None) -> Polygon:
    """Parse a field file into a convex Polygon in local meters.

    ``fmt`` is "wkt", "geojson" or "auto" (sniffed from the suffix, then
    the content).  Non-convex rings raise NonConvexError; malformed files
    raise FieldFileError.
    """
    path = FilePath(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise FieldFileError(f"cannot read field file {path}: {exc}") from exc

    if fmt == "auto":
        suffix = path.suffix.lower()
        if suffix in (".geojson", ".json"):
            fmt = "geojson"
        elif suffix == ".wkt":
            fmt = "wkt"
        else:
            fmt = "geojson" if text.lstrip().startswith("{") else "wkt"

    if fmt == "geojson":
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise FieldFileError(f"invalid JSON in {path}: {exc}") from exc
        ring = parse_geojson_polygon(obj)
    elif fmt == "wkt":
        ring = parse_wkt_polygon(text)
    else:
        raise FieldFileError(f"unknown field format {fmt!r}")

    if origin is not None:
        ring = _project_ring(ring, origin)
    poly = Polygon(ring)
    if origin is None and _looks_geographic(poly):
        raise GeographicCoordinateError(
            "coordinates look geographic (degrees); supply a projection origin"
        )
    return poly


# ---------------------------------------------------------------------------
# Writers
# ---------------------------------------------------------------------------

def flatten_path(path: Path) -> list[tuple[float, float]]:
    """Geometry-faithful polyline of the path.

    Straight pieces contribute their endpoints; arcs are flattened at
    _ARC_FLATTEN_STEP_RAD so the chord sum reproduces the true path length
    to well within 1e-6 relative.
    """
    points: list[tuple[float, float]] = []

    def emit(x: float, y: float) -> None:
        if not points or (points[-1][0] != x or points[-1][1] != y):
            points.append((x, y))

    for span, turn in zip(path.swath_spans, list(path.turns) + [None]):
        begin, end = span
        first = path.states[begin].pose.position
        last = path.states[end - 1].pose.position
        emit(first.x, first.y)
        emit(last.x, last.y)
        if turn is None:
            continue
        if turn.kind is CurveKind.STRAIGHT:
            emit(turn.goal.position.x, turn.goal.position.y)
            continue
        x, y = turn.start.position
        theta = turn.start.heading
        for steer, length in turn.segments:
            if steer == 0:
                x, y, theta = step_pose(x, y, theta, steer, length, turn.radius)
                emit(x, y)
                continue
            sweep = abs(length) / turn.radius
            n = max(1, math.ceil(sweep / _ARC_FLATTEN_STEP_RAD))
            for i in range(1, n + 1):
                px, py, _ = step_pose(x, y, theta, steer, length * i / n, turn.radius)
                emit(px, py)
            x, y, theta = step_pose(x, y, theta, steer, length, turn.radius)
    return points


def polyline_length(points) -> float:
    return sum(
        math.hypot(bx - ax, by - ay)
        for (ax, ay), (bx, by) in zip(points, points[1:])
    )


def write_path_geojson(path: Path, file, properties: dict | None = None) -> None:
    """Write the path as a GeoJSON LineString feature."""
    points = flatten_path(path)
    feature = {
        "type": "Feature",
        "geometry": {
            "type": "LineString",
            "coordinates": [[x, y] for x, y in points],
        },
        "properties": {"total_length_m": path.total_length, **(properties or {})},
    }
    with open(file, "w") as handle:
        json.dump(feature, handle)


def read_path_geojson(file) -> list[tuple[float, float]]:
    with open(file) as handle:
        obj = json.load(handle)
    geometry = obj.get("geometry", obj)
    if geometry.get("type") != "LineString":
        raise FieldFileError("expected a LineString geometry")
    return [(float(x), float(y)) for x, y in geometry["coordinates"]]


def write_states_csv(path: Path, file) -> None:
    """Pose stream at the sampling resolution: x, y, heading, motion, curvature."""
    with open(file, "w", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(["x", "y", "heading", "motion", "curvature"])
        for state in path.states:
            writer.writerow(
                [
                    repr(state.pose.position.x),
                    repr(state.pose.position.y),
                    repr(state.pose.heading),
                    state.motion.value,
                    repr(state.curvature),
                ]
            )
