"""CLI and field-file IO tests."""

from __future__ import annotations

import csv
import json
import math

import pytest

from fieldplan.cli import main
from fieldplan.errors import FieldFileError, GeographicCoordinateError, NonConvexError
from fieldplan.fieldio import (
    flatten_path,
    load_field,
    polyline_length,
    read_path_geojson,
    write_path_geojson,
)
from fieldplan.geometry import area
from fieldplan.headland import Robot
from fieldplan.pipeline import PlanConfig, plan
from fieldplan.route import Pattern
from fieldplan.swath import SwathObjective
from fieldplan.turning import CurveKind

SQUARE_WKT = "POLYGON ((0 0, 100 0, 100 100, 0 100, 0 0))"
L_SHAPE_WKT = "POLYGON ((0 0, 2 0, 2 1, 1 1, 1 2, 0 2, 0 0))"
TRACTOR = Robot(op_width=2.5, robot_width=2.5, min_turn_radius=2.1)


@pytest.fixture
def square_wkt(tmp_path):
    f = tmp_path / "square.wkt"
    f.write_text(SQUARE_WKT)
    return f


# ---------------------------------------------------------------------------
# field files
# ---------------------------------------------------------------------------

def test_load_wkt_square(square_wkt):
    poly = load_field(square_wkt)
    assert area(poly) == 10000.0


def test_load_geojson_variants(tmp_path):
    ring = [[0, 0], [50, 0], [50, 40], [0, 40], [0, 0]]
    geometry = {"type": "Polygon", "coordinates": [ring]}
    documents = [
        geometry,
        {"type": "Feature", "geometry": geometry, "properties": {}},
        {
            "type": "FeatureCollection",
            "features": [
                {"type": "Feature", "geometry": {"type": "Point", "coordinates": [1, 2]}},
                {"type": "Feature", "geometry": geometry},
            ],
        },
    ]
    for i, doc in enumerate(documents):
        f = tmp_path / f"field{i}.geojson"
        f.write_text(json.dumps(doc))
        assert area(load_field(f)) == 2000.0


def test_load_rejects_malformed(tmp_path):
    bad = tmp_path / "bad.wkt"
    bad.write_text("LINESTRING (0 0, 1 1)")
    with pytest.raises(FieldFileError):
        load_field(bad)
    bad_json = tmp_path / "bad.geojson"
    bad_json.write_text("{not json")
    with pytest.raises(FieldFileError):
        load_field(bad_json)
    with pytest.raises(FieldFileError):
        load_field(tmp_path / "missing.wkt")


def test_load_rejects_nonconvex(tmp_path):
    f = tmp_path / "l.wkt"
    f.write_text(L_SHAPE_WKT)
    with pytest.raises(NonConvexError):
        load_field(f)


def test_geographic_needs_origin(tmp_path):
    ring = [
        [5.6600, 51.9900],
        [5.6615, 51.9900],
        [5.6615, 51.9910],
        [5.6600, 51.9910],
        [5.6600, 51.9900],
    ]
    f = tmp_path / "geo.geojson"
    f.write_text(json.dumps({"type": "Polygon", "coordinates": [ring]}))
    with pytest.raises(GeographicCoordinateError):
        load_field(f)
    poly = load_field(f, origin=(5.66, 51.99))
    # ~103 m x ~111 m patch at this latitude
    assert 9_000.0 < area(poly) < 13_000.0


# ---------------------------------------------------------------------------
# GeoJSON round trip
# ---------------------------------------------------------------------------

def test_path_geojson_roundtrip_length(tmp_path, square_wkt):
    field = load_field(square_wkt)
    cfg = PlanConfig(headland_width=7.5, curve=CurveKind.DUBINS)
    report = plan(field, TRACTOR, cfg)
    out = tmp_path / "path.geojson"
    write_path_geojson(report.path, out)
    points = read_path_geojson(out)
    measured = polyline_length(points)
    assert measured == pytest.approx(report.lr, rel=1e-6)


def test_path_geojson_roundtrip_reeds_shepp(tmp_path, square_wkt):
    field = load_field(square_wkt)
    cfg = PlanConfig(headland_width=7.5, curve=CurveKind.REEDS_SHEPP, pattern=Pattern.SNAKE)
    report = plan(field, TRACTOR, cfg)
    out = tmp_path / "path.geojson"
    write_path_geojson(report.path, out)
    measured = polyline_length(read_path_geojson(out))
    assert measured == pytest.approx(report.lr, rel=1e-6)


def test_flatten_path_straight_is_exact(square_wkt):
    field = load_field(square_wkt)
    report = plan(field, TRACTOR, PlanConfig(headland_width=7.5, curve=CurveKind.STRAIGHT))
    assert polyline_length(flatten_path(report.path)) == pytest.approx(report.lr, rel=1e-12)


# ---------------------------------------------------------------------------
# CLI
# ---------------------------------------------------------------------------

def test_cli_plan_writes_artifacts(square_wkt, tmp_path, capsys):
    out_dir = tmp_path / "artifacts"
    code = main(
        [
            "plan",
            str(square_wkt),
            "--op-width", "2.5",
            "--radius", "2.1",
            "--headland", "7.5",
            "--objective", "swath-count",
            "--pattern", "boustrophedon",
            "--curve", "dubins",
            "--out-dir", str(out_dir),
        ]
    )
    assert code == 0
    captured = capsys.readouterr().out
    assert "L0 = 2972.500" in captured
    assert "LR = " in captured
    for name in ("path.geojson", "states.csv", "plan.svg"):
        assert (out_dir / name).exists()

    with open(out_dir / "states.csv") as handle:
        rows = list(csv.reader(handle))
    assert rows[0] == ["x", "y", "heading", "motion", "curvature"]
    assert all(row[3] == "forward" for row in rows[1:])


def test_cli_rejects_nonconvex(tmp_path, capsys):
    f = tmp_path / "l.wkt"
    f.write_text(L_SHAPE_WKT)
    code = main(["plan", str(f)])
    assert code == 3
    assert "E_NONCONVEX" in capsys.readouterr().err


def test_cli_rejects_zero_radius_dubins(square_wkt, capsys):
    code = main(["plan", str(square_wkt), "--curve", "dubins", "--radius", "0"])
    assert code == 4
    assert "E_RADIUS" in capsys.readouterr().err


def test_cli_rejects_unreadable_file(tmp_path, capsys):
    code = main(["plan", str(tmp_path / "nope.wkt")])
    assert code == 2
    assert "E_PARSE" in capsys.readouterr().err


def test_cli_empty_mainland_exit_code(square_wkt, capsys):
    code = main(["plan", str(square_wkt), "--headland", "50"])
    assert code == 4
    assert "E_EMPTY_MAINLAND" in capsys.readouterr().err


def test_cli_custom_order(square_wkt, tmp_path):
    order = ",".join(str(i) for i in reversed(range(34)))
    code = main(
        [
            "plan", str(square_wkt),
            "--headland", "7.5",
            "--pattern", "custom",
            "--order", order,
            "--curve", "straight",
            "--out-dir", str(tmp_path / "custom"),
        ]
    )
    assert code == 0
    code = main(
        ["plan", str(square_wkt), "--pattern", "custom", "--order", "0,1"]
    )
    assert code == 4


def test_cli_bench_small_matrix(tmp_path, capsys):
    out_dir = tmp_path / "bench"
    code = main(
        [
            "bench",
            "--seed", "7",
            "--n-fields", "2",
            "--area", "2500",
            "--out-dir", str(out_dir),
        ]
    )
    assert code == 0
    assert (out_dir / "bench.csv").exists()
    with open(out_dir / "bench.csv") as handle:
        rows = list(csv.reader(handle))
    assert len(rows) == 1 + 2 * 3 * 3 * 2
    svgs = list(out_dir.glob("scatter_*.svg"))
    assert len(svgs) == 9


def test_cli_bench_rerun_geometry_identical(tmp_path):
    argv = [
        "bench",
        "--seed", "7",
        "--n-fields", "2",
        "--area", "2500",
        "--objectives", "swath-count",
        "--patterns", "snake",
    ]
    assert main(argv + ["--out-dir", str(tmp_path / "a")]) == 0
    assert main(argv + ["--out-dir", str(tmp_path / "b")]) == 0

    def geometry_columns(path):
        with open(path) as handle:
            rows = list(csv.reader(handle))
        header = rows[0]
        keep = [i for i, col in enumerate(header) if not col.startswith("t_")]
        return [[row[i] for i in keep] for row in rows]

    assert geometry_columns(tmp_path / "a" / "bench.csv") == geometry_columns(
        tmp_path / "b" / "bench.csv"
    )


def test_cli_bench_timing_sweep(tmp_path, capsys):
    code = main(
        [
            "bench", "--timing",
            "--areas", "400,800,1600,3200",
            "--objective", "swath-count",
            "--repetitions", "1",
            "--out-dir", str(tmp_path / "timing"),
        ]
    )
    assert code == 0
    out = capsys.readouterr().out
    assert "r^2" in out
    assert (tmp_path / "timing" / "timing.svg").exists()


def test_cli_bench_accepts_field_files(square_wkt, tmp_path):
    out_dir = tmp_path / "custom_fields"
    code = main(
        [
            "bench",
            "--field-files", str(square_wkt),
            "--area", "2500",
            "--objectives", "swath-count",
            "--patterns", "boustrophedon",
            "--curves", "dubins",
            "--out-dir", str(out_dir),
        ]
    )
    assert code == 0
    with open(out_dir / "bench.csv") as handle:
        rows = list(csv.reader(handle))
    assert len(rows) == 2
    assert rows[1][0] == "square"
