"""Turn planning between directed swaths and full path assembly.

Turns are planned between endpoint poses with three connector kinds:

* straight: the in-place-turn baseline; connects positions by a straight
  segment and lets the heading jump freely at both ends (zero-radius
  limit), so the resulting path length equals the in-place route length.
* dubins: shortest forward-only curve under the minimum turning radius,
  the best of the six words LSL, RSR, LSR, RSL, RLR, LRL.
* reeds-shepp: shortest curve allowing reverse gear, evaluated over the
  classic word families (CSC, CCC and its backwards form, CCCC, CCSC and
  its backwards form, CCSCC) under timeflip/reflect transforms, plus the
  all-forward Dubins words, which are a subset of the Reeds-Shepp motions.

Every candidate word is validated by forward integration before it may be
returned: arcs are stepped with the exact constant-curvature endpoint map,
and a word whose endpoint misses the goal by more than 1e-6 m or 1e-6 rad
is discarded.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Callable, NamedTuple

from .errors import FieldPlanError, TurnRadiusError
from .geometry import Point, Pose, dist, normalize_angle
from .headland import Robot
from .route import Route

LEFT, STRAIGHT, RIGHT = 1, 0, -1
_EPS = 1e-10
_CLOSURE_TOL = 1e-6
HALF_PI = 0.5 * math.pi


class CurveKind(Enum):
    STRAIGHT = "straight"
    DUBINS = "dubins"
    REEDS_SHEPP = "reeds-shepp"


class Motion(Enum):
    FORWARD = "forward"
    REVERSE = "reverse"


class TurnSegment(NamedTuple):
    steer: int  # LEFT, STRAIGHT or RIGHT
    length: float  # meters, negative for reverse motion


class PathState(NamedTuple):
    pose: Pose
    motion: Motion
    curvature: float  # signed, left positive (1/m)


@dataclass(frozen=True)
class Turn:
    """A planned connector between two poses."""

    start: Pose
    goal: Pose
    kind: CurveKind
    segments: tuple[TurnSegment, ...]
    radius: float

    @property
    def length(self) -> float:
        return sum(abs(seg.length) for seg in self.segments)

    @property
    def word(self) -> str:
        letters = {LEFT: "L", STRAIGHT: "S", RIGHT: "R"}
        return "".join(
            letters[s.steer].lower() if s.length < 0 else letters[s.steer]
            for s in self.segments
        )


@dataclass(frozen=True)
class Path:
    """Sampled drivable path: swath runs stitched together by turns.

    ``turns`` keeps the planned connectors so writers can re-flatten the
    exact arc geometry instead of relying on the sampling resolution.
    """

    states: tuple[PathState, ...]
    total_length: float
    swath_spans: tuple[tuple[int, int], ...]
    turn_spans: tuple[tuple[int, int], ...]
    turns: tuple[Turn, ...] = ()


# ---------------------------------------------------------------------------
# Exact constant-curvature stepping
# ---------------------------------------------------------------------------

def step_pose(x: float, y: float, theta: float, steer: int, length: float, radius: float):
    """Endpoint of one constant-curvature piece from (x, y, theta)."""
    if steer == STRAIGHT:
        return x + length * math.cos(theta), y + length * math.sin(theta), theta
    new_theta = theta + steer * length / radius
    return (
        x + steer * radius * (math.sin(new_theta) - math.sin(theta)),
        y - steer * radius * (math.cos(new_theta) - math.cos(theta)),
        new_theta,
    )


def integrate_turn(turn: Turn) -> tuple[float, float, float]:
    """Forward-integrate the word from the start pose."""
    x, y = turn.start.position
    theta = turn.start.heading
    for steer, length in turn.segments:
        x, y, theta = step_pose(x, y, theta, steer, length, turn.radius)
    return x, y, theta


def _heading_gap(a: float, b: float) -> float:
    d = math.fmod(a - b, 2.0 * math.pi)
    if d < -math.pi:
        d += 2.0 * math.pi
    elif d > math.pi:
        d -= 2.0 * math.pi
    return abs(d)


def _closes(turn: Turn, tol: float = _CLOSURE_TOL) -> bool:
    x, y, theta = integrate_turn(turn)
    gx, gy = turn.goal.position
    return (
        math.hypot(x - gx, y - gy) <= tol
        and _heading_gap(theta, turn.goal.heading) <= tol
    )


# ---------------------------------------------------------------------------
# Dubins words
# ---------------------------------------------------------------------------

def _mod2pi_pos(theta: float) -> float:
    theta = math.fmod(theta, 2.0 * math.pi)
    return theta + 2.0 * math.pi if theta < 0.0 else theta


def _mod2pi_signed(theta: float) -> float:
    theta = math.fmod(theta, 2.0 * math.pi)
    if theta < -math.pi:
        theta += 2.0 * math.pi
    elif theta >= math.pi:
        theta -= 2.0 * math.pi
    return theta


def _clamp(v: float) -> float:
    return max(-1.0, min(1.0, v))


def _dubins_lsl(a, b, d):
    p_sq = 2.0 + d * d - 2.0 * math.cos(a - b) + 2.0 * d * (math.sin(a) - math.sin(b))
    if p_sq < 0.0:
        return None
    tmp = math.atan2(math.cos(b) - math.cos(a), d + math.sin(a) - math.sin(b))
    return _mod2pi_pos(-a + tmp), math.sqrt(p_sq), _mod2pi_pos(b - tmp)


def _dubins_rsr(a, b, d):
    p_sq = 2.0 + d * d - 2.0 * math.cos(a - b) + 2.0 * d * (math.sin(b) - math.sin(a))
    if p_sq < 0.0:
        return None
    tmp = math.atan2(math.cos(a) - math.cos(b), d - math.sin(a) + math.sin(b))
    return _mod2pi_pos(a - tmp), math.sqrt(p_sq), _mod2pi_pos(-b + tmp)


def _dubins_lsr(a, b, d):
    p_sq = -2.0 + d * d + 2.0 * math.cos(a - b) + 2.0 * d * (math.sin(a) + math.sin(b))
    if p_sq < 0.0:
        return None
    p = math.sqrt(p_sq)
    tmp = math.atan2(-math.cos(a) - math.cos(b), d + math.sin(a) + math.sin(b)) - math.atan2(-2.0, p)
    return _mod2pi_pos(-a + tmp), p, _mod2pi_pos(-_mod2pi_pos(b) + tmp)


def _dubins_rsl(a, b, d):
    p_sq = d * d - 2.0 + 2.0 * math.cos(a - b) - 2.0 * d * (math.sin(a) + math.sin(b))
    if p_sq < 0.0:
        return None
    p = math.sqrt(p_sq)
    tmp = math.atan2(math.cos(a) + math.cos(b), d - math.sin(a) - math.sin(b)) - math.atan2(2.0, p)
    return _mod2pi_pos(a - tmp), p, _mod2pi_pos(b - tmp)


def _dubins_rlr(a, b, d):
    rho = (6.0 - d * d + 2.0 * math.cos(a - b) + 2.0 * d * (math.sin(a) - math.sin(b))) / 8.0
    if abs(rho) > 1.0:
        return None
    p = _mod2pi_pos(2.0 * math.pi - math.acos(_clamp(rho)))
    t = _mod2pi_pos(a - math.atan2(math.cos(a) - math.cos(b), d - math.sin(a) + math.sin(b)) + p / 2.0)
    return t, p, _mod2pi_pos(a - b - t + p)


def _dubins_lrl(a, b, d):
    rho = (6.0 - d * d + 2.0 * math.cos(a - b) + 2.0 * d * (math.sin(b) - math.sin(a))) / 8.0
    if abs(rho) > 1.0:
        return None
    p = _mod2pi_pos(2.0 * math.pi - math.acos(_clamp(rho)))
    t = _mod2pi_pos(-a - math.atan2(math.cos(a) - math.cos(b), d + math.sin(a) - math.sin(b)) + p / 2.0)
    return t, p, _mod2pi_pos(_mod2pi_pos(b) - a - t + p)


_DUBINS_WORDS: tuple[tuple[str, Callable], ...] = (
    ("LSL", _dubins_lsl),
    ("RSR", _dubins_rsr),
    ("LSR", _dubins_lsr),
    ("RSL", _dubins_rsl),
    ("RLR", _dubins_rlr),
    ("LRL", _dubins_lrl),
)

_STEER_OF = {"L": LEFT, "S": STRAIGHT, "R": RIGHT}


def _build_turn(start, goal, kind, radius, letters, lengths) -> Turn:
    segments = tuple(
        TurnSegment(_STEER_OF[ch], L)
        for ch, L in zip(letters, lengths)
        if abs(L) > 1e-12
    )
    return Turn(start=start, goal=goal, kind=kind, segments=segments, radius=radius)


def dubins_words(start: Pose, goal: Pose, radius: float, kind: CurveKind = CurveKind.DUBINS):
    """All feasible Dubins words for the pose pair (unfiltered candidates)."""
    if radius <= 0.0:
        raise TurnRadiusError("Dubins planning needs a positive turning radius")
    dx = goal.position.x - start.position.x
    dy = goal.position.y - start.position.y
    d = math.hypot(dx, dy) / radius
    theta = math.atan2(dy, dx) if d > 0.0 else 0.0
    alpha = _mod2pi_pos(start.heading - theta)
    beta = _mod2pi_pos(goal.heading - theta)

    turns = []
    for letters, fn in _DUBINS_WORDS:
        sol = fn(alpha, beta, d)
        if sol is None:
            continue
        lengths = tuple(v * radius for v in sol)
        turns.append(_build_turn(start, goal, kind, radius, letters, lengths))
    return turns


def dubins_turn(start: Pose, goal: Pose, radius: float) -> Turn:
    """Minimum-length Dubins curve (all motion forward)."""
    valid = [t for t in dubins_words(start, goal, radius) if _closes(t)]
    if not valid:
        raise FieldPlanError("no Dubins word closes on the goal pose")
    return min(valid, key=lambda t: t.length)


# ---------------------------------------------------------------------------
# Reeds-Shepp words
# ---------------------------------------------------------------------------

def _polar(x: float, y: float) -> tuple[float, float]:
    return math.hypot(x, y), math.atan2(y, x)


def _rs_lp_sp_lp(x, y, phi):
    u, t = _polar(x - math.sin(phi), y - 1.0 + math.cos(phi))
    if t >= -_EPS:
        v = _mod2pi_signed(phi - t)
        if v >= -_EPS:
            return t, u, v
    return None


def _rs_lp_sp_rp(x, y, phi):
    u1, t1 = _polar(x + math.sin(phi), y - 1.0 - math.cos(phi))
    if u1 * u1 >= 4.0:
        u = math.sqrt(u1 * u1 - 4.0)
        theta = math.atan2(2.0, u)
        t = _mod2pi_signed(t1 + theta)
        v = _mod2pi_signed(t - phi)
        if t >= -_EPS and v >= -_EPS:
            return t, u, v
    return None


def _rs_lp_rm_l(x, y, phi):
    xi = x - math.sin(phi)
    eta = y - 1.0 + math.cos(phi)
    u1, theta = _polar(xi, eta)
    if u1 <= 4.0:
        u = -2.0 * math.asin(_clamp(0.25 * u1))
        t = _mod2pi_signed(theta + 0.5 * u + math.pi)
        v = _mod2pi_signed(phi - t + u)
        if t >= -_EPS and u <= _EPS:
            return t, u, v
    return None


def _tau_omega(u, v, xi, eta, phi):
    delta = _mod2pi_signed(u - v)
    a = math.sin(u) - math.sin(delta)
    b = math.cos(u) - math.cos(delta) - 1.0
    t1 = math.atan2(eta * a - xi * b, xi * a + eta * b)
    t2 = 2.0 * (math.cos(delta) - math.cos(v) - math.cos(u)) + 3.0
    tau = _mod2pi_signed(t1 + math.pi) if t2 < 0.0 else _mod2pi_signed(t1)
    return tau, _mod2pi_signed(tau - u + v - phi)


def _rs_lp_rup_lum_rm(x, y, phi):
    xi = x + math.sin(phi)
    eta = y - 1.0 - math.cos(phi)
    rho = 0.25 * (2.0 + math.hypot(xi, eta))
    if rho <= 1.0:
        u = math.acos(_clamp(rho))
        t, v = _tau_omega(u, -u, xi, eta, phi)
        if t >= -_EPS and v <= _EPS:
            return t, u, v
    return None


def _rs_lp_rum_lum_rp(x, y, phi):
    xi = x + math.sin(phi)
    eta = y - 1.0 - math.cos(phi)
    rho = (20.0 - xi * xi - eta * eta) / 16.0
    if 0.0 <= rho <= 1.0:
        u = -math.acos(_clamp(rho))
        if u >= -HALF_PI:
            t, v = _tau_omega(u, u, xi, eta, phi)
            if t >= -_EPS and v >= -_EPS:
                return t, u, v
    return None


def _rs_lp_rm_sm_lm(x, y, phi):
    xi = x - math.sin(phi)
    eta = y - 1.0 + math.cos(phi)
    rho, theta = _polar(xi, eta)
    if rho >= 2.0:
        r = math.sqrt(rho * rho - 4.0)
        u = 2.0 - r
        t = _mod2pi_signed(theta + math.atan2(r, -2.0))
        v = _mod2pi_signed(phi - HALF_PI - t)
        if t >= -_EPS and u <= _EPS and v <= _EPS:
            return t, u, v
    return None


def _rs_lp_rm_sm_rm(x, y, phi):
    xi = x + math.sin(phi)
    eta = y - 1.0 - math.cos(phi)
    rho, theta = _polar(-eta, xi)
    if rho >= 2.0:
        t = theta
        u = 2.0 - rho
        v = _mod2pi_signed(t + HALF_PI - phi)
        if t >= -_EPS and u <= _EPS and v <= _EPS:
            return t, u, v
    return None


def _rs_lp_rm_s_lm_rp(x, y, phi):
    xi = x + math.sin(phi)
    eta = y - 1.0 - math.cos(phi)
    rho, _ = _polar(xi, eta)
    if rho >= 2.0:
        u = 4.0 - math.sqrt(rho * rho - 4.0)
        if u <= _EPS:
            t = _mod2pi_signed(
                math.atan2((4.0 - u) * xi - 2.0 * eta, -2.0 * xi + (u - 4.0) * eta)
            )
            v = _mod2pi_signed(t - phi)
            if t >= -_EPS and v >= -_EPS:
                return t, u, v
    return None


# (solver, letters, (t, u, v) -> scaled lengths, uses backwards frame)
_RS_FAMILIES = (
    (_rs_lp_sp_lp, "LSL", lambda t, u, v: (t, u, v), False),
    (_rs_lp_sp_rp, "LSR", lambda t, u, v: (t, u, v), False),
    (_rs_lp_rm_l, "LRL", lambda t, u, v: (t, u, v), False),
    (_rs_lp_rm_l, "LRL", lambda t, u, v: (v, u, t), True),
    (_rs_lp_rup_lum_rm, "LRLR", lambda t, u, v: (t, u, -u, v), False),
    (_rs_lp_rum_lum_rp, "LRLR", lambda t, u, v: (t, u, u, v), False),
    (_rs_lp_rm_sm_lm, "LRSL", lambda t, u, v: (t, -HALF_PI, u, v), False),
    (_rs_lp_rm_sm_lm, "LSRL", lambda t, u, v: (v, u, -HALF_PI, t), True),
    (_rs_lp_rm_sm_rm, "LRSR", lambda t, u, v: (t, -HALF_PI, u, v), False),
    (_rs_lp_rm_sm_rm, "RSRL", lambda t, u, v: (v, u, -HALF_PI, t), True),
    (_rs_lp_rm_s_lm_rp, "LRSLR", lambda t, u, v: (t, -HALF_PI, u, -HALF_PI, v), False),
)

_SWAP = str.maketrans("LR", "RL")


def reeds_shepp_words(start: Pose, goal: Pose, radius: float):
    """Candidate Reeds-Shepp words, including the all-forward Dubins subset."""
    if radius <= 0.0:
        raise TurnRadiusError("Reeds-Shepp planning needs a positive turning radius")
    dx = goal.position.x - start.position.x
    dy = goal.position.y - start.position.y
    c, s = math.cos(start.heading), math.sin(start.heading)
    x = (c * dx + s * dy) / radius
    y = (-s * dx + c * dy) / radius
    phi = _mod2pi_signed(goal.heading - start.heading)
    xb = x * math.cos(phi) + y * math.sin(phi)
    yb = x * math.sin(phi) - y * math.cos(phi)

    turns = []
    for solver, letters, pattern, backwards in _RS_FAMILIES:
        bx, by = (xb, yb) if backwards else (x, y)
        for timeflip in (False, True):
            for reflect in (False, True):
                xi = -bx if timeflip else bx
                yi = -by if reflect else by
                phii = -phi if (timeflip ^ reflect) else phi
                sol = solver(xi, yi, phii)
                if sol is None:
                    continue
                lengths = pattern(*sol)
                sign = -radius if timeflip else radius
                word = letters.translate(_SWAP) if reflect else letters
                turns.append(
                    _build_turn(
                        start,
                        goal,
                        CurveKind.REEDS_SHEPP,
                        radius,
                        word,
                        tuple(sign * v for v in lengths),
                    )
                )
    turns.extend(dubins_words(start, goal, radius, kind=CurveKind.REEDS_SHEPP))
    return turns


def reeds_shepp_turn(start: Pose, goal: Pose, radius: float) -> Turn:
    """Minimum-length Reeds-Shepp curve (forward and reverse motion)."""
    valid = [t for t in reeds_shepp_words(start, goal, radius) if _closes(t)]
    if not valid:
        raise FieldPlanError("no Reeds-Shepp word closes on the goal pose")
    return min(valid, key=lambda t: t.length)


# ---------------------------------------------------------------------------
# Path assembly
# ---------------------------------------------------------------------------

def _straight_turn(start: Pose, goal: Pose) -> Turn:
    gap = dist(start.position, goal.position)
    segments = () if gap <= 1e-12 else (TurnSegment(STRAIGHT, gap),)
    return Turn(start=start, goal=goal, kind=CurveKind.STRAIGHT, segments=segments, radius=0.0)


def turn_between(start: Pose, goal: Pose, kind: CurveKind, radius: float) -> Turn:
    if kind is CurveKind.STRAIGHT:
        return _straight_turn(start, goal)
    if radius <= 0.0:
        raise TurnRadiusError(
            "zero turning radius cannot drive curved turns; use the straight curve kind"
        )
    if kind is CurveKind.DUBINS:
        return dubins_turn(start, goal, radius)
    return reeds_shepp_turn(start, goal, radius)


def _sample_straight_run(states, start: Point, end: Point, step: float) -> None:
    length = dist(start, end)
    heading = math.atan2(end.y - start.y, end.x - start.x)
    n = max(1, math.ceil(length / step))
    if not states:
        states.append(PathState(Pose(start, heading), Motion.FORWARD, 0.0))
    for i in range(1, n + 1):
        f = i / n
        p = Point(start.x + f * (end.x - start.x), start.y + f * (end.y - start.y))
        states.append(PathState(Pose(p, heading), Motion.FORWARD, 0.0))


def _sample_turn(states, turn: Turn, step: float) -> None:
    if turn.kind is CurveKind.STRAIGHT:
        if turn.segments:
            _sample_straight_run(states, turn.start.position, turn.goal.position, step)
        return
    x, y = turn.start.position
    theta = turn.start.heading
    for steer, length in turn.segments:
        motion = Motion.FORWARD if length >= 0.0 else Motion.REVERSE
        curvature = steer / turn.radius if steer != STRAIGHT else 0.0
        n = max(1, math.ceil(abs(length) / step))
        for i in range(1, n + 1):
            sx, sy, stheta = step_pose(x, y, theta, steer, length * i / n, turn.radius)
            states.append(PathState(Pose(Point(sx, sy), stheta), motion, curvature))
        x, y, theta = step_pose(x, y, theta, steer, length, turn.radius)


def plan_path(
    route: Route,
    robot: Robot,
    curve: CurveKind,
    sample_step: float = 0.1,
) -> Path:
    """Connect the route's directed swaths with the selected turn kind.

    Swaths become straight runs sampled at ``sample_step``; turns are
    planned between the traversal end pose of one swath and the traversal
    start pose of the next, with headings along the swath directions.
    """
    if len(route) == 0:
        raise ValueError("cannot plan a path for an empty route")
    if sample_step <= 0.0:
        raise ValueError("sample_step must be positive")
    if curve is not CurveKind.STRAIGHT and robot.min_turn_radius <= 0.0:
        raise TurnRadiusError(
            "zero turning radius cannot drive curved turns; use the straight curve kind"
        )

    poses: list[tuple[Pose, Pose]] = []
    for d in route.ordered:
        heading = math.atan2(d.end.y - d.start.y, d.end.x - d.start.x)
        poses.append((Pose(d.start, heading), Pose(d.end, heading)))

    turns = [
        turn_between(poses[i][1], poses[i + 1][0], curve, robot.min_turn_radius)
        for i in range(len(poses) - 1)
    ]

    states: list[PathState] = []
    swath_spans: list[tuple[int, int]] = []
    turn_spans: list[tuple[int, int]] = []
    for i, d in enumerate(route.ordered):
        begin = len(states)
        _sample_straight_run(states, d.start, d.end, sample_step)
        swath_spans.append((begin, len(states)))
        if i < len(turns):
            begin = len(states)
            _sample_turn(states, turns[i], sample_step)
            turn_spans.append((begin, len(states)))

    total = sum(d.length for d in route.ordered) + sum(t.length for t in turns)
    return Path(
        states=tuple(states),
        total_length=total,
        swath_spans=tuple(swath_spans),
        turn_spans=tuple(turn_spans),
        turns=tuple(turns),
    )
