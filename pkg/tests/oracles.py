"""Independent slow-path oracles used to pin expected values in tests.

Nothing here may call the code paths it is used to check: areas come from
rejection sampling, erosion from dense grids, chords from brute-force
edge intersection, and curve lengths from numerical ODE integration or a
lattice search.
"""

from __future__ import annotations

import heapq
import math

import numpy as np


def _inside_mask(vertices: np.ndarray, pts: np.ndarray, tol: float = 0.0) -> np.ndarray:
    """Vectorized point-in-convex-CCW-polygon test."""
    a = vertices
    b = np.roll(vertices, -1, axis=0)
    ex = b[:, 0] - a[:, 0]
    ey = b[:, 1] - a[:, 1]
    px = pts[:, 0][:, None] - a[:, 0][None, :]
    py = pts[:, 1][:, None] - a[:, 1][None, :]
    cross = ex[None, :] * py - ey[None, :] * px
    return np.all(cross >= -tol, axis=1)


def mc_union_area(vertex_lists, seed: int, n_samples: int = 1_000_000) -> float:
    """Monte-Carlo area of a union of convex polygons by rejection sampling."""
    arrays = [np.asarray(v, dtype=float) for v in vertex_lists]
    lo = np.min([a.min(axis=0) for a in arrays], axis=0)
    hi = np.max([a.max(axis=0) for a in arrays], axis=0)
    rng = np.random.default_rng(seed)
    pts = rng.uniform(lo, hi, size=(n_samples, 2))
    hit = np.zeros(n_samples, dtype=bool)
    for arr in arrays:
        hit |= _inside_mask(arr, pts)
    box = (hi[0] - lo[0]) * (hi[1] - lo[1])
    return box * hit.mean()


def mc_area(vertices, seed: int, n_samples: int = 1_000_000) -> float:
    return mc_union_area([vertices], seed, n_samples)


def _segment_distances(vertices: np.ndarray, pts: np.ndarray) -> np.ndarray:
    """Min distance from each point to the polygon boundary (per segment)."""
    a = vertices
    b = np.roll(vertices, -1, axis=0)
    e = b - a
    ee = (e * e).sum(axis=1)
    px = pts[:, 0][:, None] - a[:, 0][None, :]
    py = pts[:, 1][:, None] - a[:, 1][None, :]
    t = (px * e[:, 0][None, :] + py * e[:, 1][None, :]) / ee[None, :]
    t = np.clip(t, 0.0, 1.0)
    dx = px - t * e[:, 0][None, :]
    dy = py - t * e[:, 1][None, :]
    return np.sqrt(dx * dx + dy * dy).min(axis=1)


def grid_erosion_area(vertices, depth: float, cell: float = 0.01) -> float:
    """Erosion area on a dense grid: cells inside and >= depth from the ring.

    Processes the grid in row blocks so 1 cm resolution stays within memory
    for hectare-sized fields.
    """
    arr = np.asarray(vertices, dtype=float)
    xmin, ymin = arr.min(axis=0)
    xmax, ymax = arr.max(axis=0)
    xs = np.arange(xmin + cell / 2, xmax, cell)
    ys = np.arange(ymin + cell / 2, ymax, cell)
    count = 0
    block = max(1, int(4_000_000 / max(len(xs), 1)))
    for start in range(0, len(ys), block):
        yy = ys[start : start + block]
        gx, gy = np.meshgrid(xs, yy)
        pts = np.column_stack([gx.ravel(), gy.ravel()])
        inside = _inside_mask(arr, pts)
        if not inside.any():
            continue
        dist = _segment_distances(arr, pts[inside])
        count += int((dist >= depth).sum())
    return count * cell * cell


def line_polygon_chord(vertices, anchor, direction):
    """Chord of an infinite line in a convex polygon by brute edge intersection.

    Returns (t_min, t_max) line parameters or None; independent of the
    parametric half-plane accumulation used by the implementation.
    """
    ax, ay = anchor
    dx, dy = math.cos(direction), math.sin(direction)
    ts = []
    n = len(vertices)
    for i in range(n):
        px, py = vertices[i]
        qx, qy = vertices[(i + 1) % n]
        ex, ey = qx - px, qy - py
        denom = dx * ey - dy * ex
        if abs(denom) < 1e-14:
            continue
        # anchor + t*d = p + u*e
        t = ((px - ax) * ey - (py - ay) * ex) / denom
        u = ((px - ax) * dy - (py - ay) * dx) / denom
        if -1e-12 <= u <= 1.0 + 1e-12:
            ts.append(t)
    if len(ts) < 2:
        return None
    return min(ts), max(ts)


def integrate_unicycle_rk4(x, y, theta, curvature, length, step: float = 1e-3):
    """Numerically integrate the unicycle ODE along one constant-curvature piece.

    Signed ``length`` drives the vehicle backwards; used to validate the
    closed-form arc endpoint math independently.
    """
    direction = 1.0 if length >= 0 else -1.0
    remaining = abs(length)
    while remaining > 0.0:
        h = min(step, remaining) * direction

        def deriv(th):
            return math.cos(th), math.sin(th), curvature

        k1 = deriv(theta)
        k2 = deriv(theta + 0.5 * h * k1[2])
        k3 = deriv(theta + 0.5 * h * k2[2])
        k4 = deriv(theta + h * k3[2])
        x += h / 6.0 * (k1[0] + 2 * k2[0] + 2 * k3[0] + k4[0])
        y += h / 6.0 * (k1[1] + 2 * k2[1] + 2 * k3[1] + k4[1])
        theta += h / 6.0 * (k1[2] + 2 * k2[2] + 2 * k3[2] + k4[2])
        remaining -= abs(h)
    return x, y, theta


def lattice_shortest_path(
    start,
    goal,
    radius: float,
    heading_bins: int = 180,
    grid: float = 0.02,
    goal_tol: float = 0.03,
    max_expansions: int = 4_000_000,
):
    """A* over arc/straight motion primitives with reverse gear.

    Works in radius-scaled units.  Returns the length (meters) of the best
    lattice path from ``start`` to within ``goal_tol`` (scaled) of the goal
    position at the goal heading bin, an upper bound on the true optimum up
    to the discretization slack.
    """
    sx, sy, sth = start
    gx, gy, gth = goal
    sx, sy = sx / radius, sy / radius
    gx, gy = gx / radius, gy / radius

    dtheta = 2.0 * math.pi / heading_bins
    sbin = int(round(sth / dtheta)) % heading_bins
    gbin = int(round(gth / dtheta)) % heading_bins
    step = dtheta  # arc length of one heading increment at unit radius

    def key(x, y, b):
        return (int(round(x / grid)), int(round(y / grid)), b)

    start_state = (sx, sy, sbin)
    best = {key(sx, sy, sbin): 0.0}
    h0 = math.hypot(gx - sx, gy - sy)
    heap = [(h0, 0.0, sx, sy, sbin)]
    expansions = 0
    while heap:
        f, g, x, y, b = heapq.heappop(heap)
        if best.get(key(x, y, b), math.inf) < g - 1e-12:
            continue
        if b == gbin and math.hypot(x - gx, y - gy) <= goal_tol:
            return g * radius
        expansions += 1
        if expansions > max_expansions:
            raise RuntimeError("lattice search exceeded expansion budget")
        th = b * dtheta
        succs = []
        for sign in (1.0, -1.0):
            succs.append((x + sign * step * math.cos(th), y + sign * step * math.sin(th), b, step))
            for steer in (1, -1):
                nb = (b + steer * (1 if sign > 0 else -1)) % heading_bins
                nth = nb * dtheta
                nx = x + steer * (math.sin(nth) - math.sin(th))
                ny = y - steer * (math.cos(nth) - math.cos(th))
                succs.append((nx, ny, nb, step))
        for nx, ny, nb, cost in succs:
            ng = g + cost
            k = key(nx, ny, nb)
            if ng < best.get(k, math.inf) - 1e-12:
                best[k] = ng
                heur = math.hypot(gx - nx, gy - ny)
                heapq.heappush(heap, (ng + heur, ng, nx, ny, nb))
    raise RuntimeError("lattice search failed to reach the goal")
