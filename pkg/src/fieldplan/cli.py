"""Command-line interface: ``fieldplan plan`` and ``fieldplan bench``.

Exit codes: 0 success, 2 input error (unreadable or malformed field
files, geographic coordinates without an origin), 3 scope error
(non-convex or degenerate fields), 4 planning error (empty mainland,
zero-radius curved turns, bad custom order).
"""

from __future__ import annotations

import argparse
import math
import sys
from pathlib import Path as FilePath

from . import bench as bench_mod
from .errors import (
    EmptyMainlandError,
    FieldFileError,
    FieldPlanError,
    InvalidGeometryError,
    InvalidRouteError,
    NonConvexError,
    TurnRadiusError,
)
from .fieldio import load_field, write_path_geojson, write_states_csv
from .geometry import area
from .headland import Robot
from .pipeline import PlanConfig, plan
from .plots import plot_length_scatter_cells, plot_plan_overlay, plot_timing_fits
from .route import Pattern
from .swath import SwathObjective
from .turning import CurveKind

_INPUT_ERRORS = (FieldFileError,)
_SCOPE_ERRORS = (NonConvexError, InvalidGeometryError)
_PLANNING_ERRORS = (EmptyMainlandError, TurnRadiusError, InvalidRouteError, FieldPlanError)


def _fail(exc: FieldPlanError) -> int:
    print(f"error: {exc.code}: {exc}", file=sys.stderr)
    if isinstance(exc, _INPUT_ERRORS):
        return 2
    if isinstance(exc, _SCOPE_ERRORS):
        return 3
    return 4


def _parse_origin(text: str | None) -> tuple[float, float] | None:
    if text is None:
        return None
    try:
        lon, lat = (float(v) for v in text.split(","))
    except ValueError:
        raise FieldFileError(f"--origin expects 'lon,lat', got {text!r}") from None
    return lon, lat


def _parse_order(text: str | None) -> tuple[int, ...] | None:
    if text is None:
        return None
    try:
        return tuple(int(v) for v in text.split(","))
    except ValueError:
        raise InvalidRouteError(f"--order expects comma-separated integers, got {text!r}") from None


def _robot_from_args(args) -> Robot:
    robot_width = args.robot_width if args.robot_width is not None else args.op_width
    return Robot(
        op_width=args.op_width,
        robot_width=robot_width,
        min_turn_radius=args.radius,
    )


def _config_from_args(args) -> PlanConfig:
    return PlanConfig(
        headland_width=args.headland,
        headland_multiple=args.headland_multiple,
        swath_objective=SwathObjective(args.objective),
        angle_step=math.radians(args.angle_step_deg),
        pattern=Pattern(args.pattern),
        spiral_bulk=args.spiral_bulk,
        custom_order=_parse_order(args.order),
        curve=CurveKind(args.curve),
        sample_step=args.sample_step,
    )


def _add_robot_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--op-width", type=float, default=2.5, help="operational width [m]")
    parser.add_argument(
        "--robot-width", type=float, default=None, help="vehicle width [m] (default: op width)"
    )
    parser.add_argument("--radius", type=float, default=2.1, help="minimum turning radius [m]")


def _add_plan_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--headland", type=float, default=None, help="headland width [m]")
    parser.add_argument(
        "--headland-multiple",
        type=float,
        default=3.0,
        help="headland width as a multiple of op width when --headland is unset",
    )
    parser.add_argument(
        "--objective",
        choices=[o.value for o in SwathObjective],
        default=SwathObjective.SWATH_COUNT.value,
    )
    parser.add_argument("--angle-step-deg", type=float, default=1.0)
    parser.add_argument(
        "--pattern", choices=[p.value for p in Pattern], default=Pattern.BOUSTROPHEDON.value
    )
    parser.add_argument("--spiral-bulk", type=int, default=6)
    parser.add_argument("--order", default=None, help="custom pattern order, e.g. 0,2,1,3")
    parser.add_argument(
        "--curve", choices=[c.value for c in CurveKind], default=CurveKind.DUBINS.value
    )
    parser.add_argument("--sample-step", type=float, default=0.1, help="path sampling step [m]")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fieldplan",
        description="Coverage path planning for convex fields",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_plan = sub.add_parser("plan", help="plan a coverage path for one field")
    p_plan.add_argument("field", help="field boundary file (WKT or GeoJSON)")
    p_plan.add_argument("--format", choices=["auto", "wkt", "geojson"], default="auto")
    p_plan.add_argument("--origin", default=None, help="lon,lat projection origin for geographic input")
    _add_robot_flags(p_plan)
    _add_plan_flags(p_plan)
    p_plan.add_argument("--out-dir", default="out", help="artifact directory")

    p_bench = sub.add_parser("bench", help="run the benchmark matrix or timing sweep")
    _add_robot_flags(p_bench)
    p_bench.add_argument("--seed", type=int, default=7)
    p_bench.add_argument("--n-fields", type=int, default=38)
    p_bench.add_argument("--area", type=float, default=10_000.0, help="field area [m^2]")
    p_bench.add_argument(
        "--field-files",
        nargs="*",
        default=None,
        help="use these field files instead of seeded synthetic fields",
    )
    p_bench.add_argument("--headland", type=float, default=None)
    p_bench.add_argument("--angle-step-deg", type=float, default=1.0)
    p_bench.add_argument("--spiral-bulk", type=int, default=6)
    p_bench.add_argument(
        "--objectives",
        nargs="*",
        choices=[o.value for o in SwathObjective],
        default=[o.value for o in SwathObjective],
    )
    p_bench.add_argument(
        "--patterns",
        nargs="*",
        choices=[p.value for p in Pattern if p is not Pattern.CUSTOM],
        default=[p.value for p in bench_mod.DEFAULT_PATTERNS],
    )
    p_bench.add_argument(
        "--curves",
        nargs="*",
        choices=[c.value for c in CurveKind],
        default=[c.value for c in bench_mod.DEFAULT_CURVES],
    )
    p_bench.add_argument("--timing", action="store_true", help="run the timing sweep instead")
    p_bench.add_argument(
        "--areas",
        default="2500,5000,10000,20000,40000",
        help="comma-separated areas [m^2] for --timing",
    )
    p_bench.add_argument(
        "--objective",
        choices=[o.value for o in SwathObjective],
        default=SwathObjective.SWATH_COUNT.value,
        help="objective for --timing",
    )
    p_bench.add_argument("--repetitions", type=int, default=5)
    p_bench.add_argument("--out-dir", default="bench_out")
    return parser


def cmd_plan(args) -> int:
    robot = _robot_from_args(args)
    cfg = _config_from_args(args)
    field = load_field(args.field, fmt=args.format, origin=_parse_origin(args.origin))
    report = plan(field, robot, cfg)

    out_dir = FilePath(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    geojson_file = out_dir / "path.geojson"
    states_file = out_dir / "states.csv"
    svg_file = out_dir / "plan.svg"
    write_path_geojson(
        report.path,
        geojson_file,
        properties={"curve": cfg.curve.value, "n_swaths": len(report.swaths)},
    )
    write_states_csv(report.path, states_file)
    plot_plan_overlay(field, report, svg_file)

    print(f"field: {area(field) / 10_000.0:.4f} ha, {len(field.vertices)} vertices")
    print(
        f"headland: {report.headland.headland_width:g} m, "
        f"area ratio {report.headland.area_ratio:.4f}"
    )
    print(
        f"swaths: {len(report.swaths)} at {math.degrees(report.swaths.angle):.1f} deg "
        f"({report.objective.value} = {report.objective_value:.4f})"
    )
    print(f"route: {cfg.pattern.value}, L0 = {report.l0:.3f} m")
    print(
        f"path: {cfg.curve.value}, LR = {report.lr:.3f} m, "
        f"turn overhead {100 * report.turn_overhead:.2f}%"
    )
    if report.max_turn_excursion > 0:
        print(f"warning: turns leave the field by up to {report.max_turn_excursion:.2f} m")
    timings = ", ".join(f"{k} {v:.3f}s" for k, v in report.timings.items())
    print(f"timings: {timings}")
    print(f"wrote: {geojson_file} {states_file} {svg_file}")
    return 0


def cmd_bench(args) -> int:
    robot = _robot_from_args(args)
    out_dir = FilePath(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)

    if args.timing:
        try:
            areas = [float(v) for v in args.areas.split(",")]
        except ValueError:
            raise FieldFileError(f"--areas expects comma-separated numbers, got {args.areas!r}") from None
        objective = SwathObjective(args.objective)
        fit = bench_mod.run_timing_sweep(
            areas,
            objective,
            robot,
            repetitions=args.repetitions,
            angle_step=math.radians(args.angle_step_deg),
        )
        svg = out_dir / "timing.svg"
        plot_timing_fits([fit], [objective.value], svg)
        print(f"timing sweep ({objective.value}, {fit.model} model):")
        for field_area, t in zip(fit.areas, fit.times_s):
            print(f"  {field_area / 10_000.0:.2f} ha: {t:.3f} s")
        print(f"fit: C0 = {fit.c0:.6g}, C1 = {fit.c1:.6g}, r^2 = {fit.r_squared:.4f}")
        print(f"wrote: {svg}")
        return 0

    if args.field_files:
        fields = [
            bench_mod.FieldCase(
                name=FilePath(f).stem,
                boundary=bench_mod.rescale_to_area(load_field(f), args.area),
                target_area=args.area,
            )
            for f in args.field_files
        ]
    else:
        fields = bench_mod.generate_convex_fields(args.n_fields, args.seed, args.area)

    rows = bench_mod.run_matrix(
        fields,
        robot,
        objectives=[SwathObjective(v) for v in args.objectives],
        patterns=[Pattern(v) for v in args.patterns],
        curves=[CurveKind(v) for v in args.curves],
        headland_width=args.headland,
        angle_step=math.radians(args.angle_step_deg),
        spiral_bulk=args.spiral_bulk,
    )
    csv_file = out_dir / "bench.csv"
    bench_mod.write_matrix_csv(rows, csv_file)
    figures = plot_length_scatter_cells(rows, out_dir)

    ok = [r for r in rows if r["status"] == "ok"]
    failed = len(rows) - len(ok)
    print(f"benchmark: {len(fields)} fields, {len(rows)} rows ({failed} failed)")
    if ok:
        overheads = [r["overhead"] for r in ok]
        print(
            f"turn overhead: min {min(overheads):.4f}, "
            f"mean {sum(overheads) / len(overheads):.4f}, max {max(overheads):.4f}"
        )
    print(f"wrote: {csv_file} and {len(figures)} scatter SVGs in {out_dir}")
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "plan":
            return cmd_plan(args)
        return cmd_bench(args)
    except FieldPlanError as exc:
        return _fail(exc)
    except ValueError as exc:
        print(f"error: E_VALUE: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
