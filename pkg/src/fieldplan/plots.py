"""Figure rendering for plan overlays, benchmark scatters and timing curves.

All figures are written as SVG next to the delimited outputs.  The SVG
hash salt and metadata are pinned so repeated runs produce stable files.
"""

from __future__ import annotations

import math
from pathlib import Path as FilePath
from typing import Iterable, Sequence

import matplotlib

matplotlib.use("Agg")
matplotlib.rcParams["svg.hashsalt"] = "fieldplan"

import matplotlib.pyplot as plt

from .bench import TimingModelFit
from .geometry import Polygon
from .pipeline import PlanReport

_CURVE_COLORS = {"dubins": "tab:red", "reeds-shepp": "tab:blue"}


def _save(fig, path) -> None:
    fig.savefig(path, format="svg", metadata={"Date": None})
    plt.close(fig)


def _ring_xy(poly: Polygon):
    xs = [p.x for p in poly.ring]
    ys = [p.y for p in poly.ring]
    return xs, ys


def plot_plan_overlay(field: Polygon, report: PlanReport, path) -> None:
    """Field boundary, mainland, swath centerlines and the driven path."""
    fig, ax = plt.subplots(figsize=(8, 8))
    xs, ys = _ring_xy(field)
    ax.plot(xs, ys, color="black", linewidth=1.5, label="field")
    if report.headland.mainland is not None:
        xs, ys = _ring_xy(report.headland.mainland)
        ax.plot(xs, ys, color="tab:green", linewidth=1.0, label="mainland")
    for sw in report.swaths.swaths:
        (x0, y0), (x1, y1) = sw.centerline.start, sw.centerline.end
        ax.plot([x0, x1], [y0, y1], color="lightsteelblue", linewidth=0.6)
    px = [s.pose.position.x for s in report.path.states]
    py = [s.pose.position.y for s in report.path.states]
    ax.plot(px, py, color="tab:red", linewidth=0.9, label="path")
    if px:
        ax.plot(px[0], py[0], "o", color="tab:red", markersize=5)
    ax.set_aspect("equal")
    ax.set_xlabel("x [m]")
    ax.set_ylabel("y [m]")
    ax.legend(loc="upper right", fontsize=8)
    ax.set_title(
        f"{len(report.swaths)} swaths @ {math.degrees(report.swaths.angle):.1f} deg, "
        f"L0 {report.l0:.1f} m, LR {report.lr:.1f} m"
    )
    _save(fig, path)


def plot_length_scatter_cells(rows: Iterable[dict], out_dir) -> list[FilePath]:
    """One LR-versus-L0 scatter per (objective, pattern) cell.

    Dubins rows plot red, Reeds-Shepp rows blue; the black line marks the
    1:1 relation an in-place-turning vehicle would achieve.
    """
    out_dir = FilePath(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    cells: dict[tuple[str, str], list[dict]] = {}
    for row in rows:
        if row["status"] != "ok":
            continue
        cells.setdefault((row["objective"], row["pattern"]), []).append(row)

    written = []
    for (objective, pattern), cell_rows in sorted(cells.items()):
        fig, ax = plt.subplots(figsize=(5, 5))
        lo = min(min(r["L0_m"], r["LR_m"]) for r in cell_rows)
        hi = max(max(r["L0_m"], r["LR_m"]) for r in cell_rows)
        pad = 0.05 * (hi - lo + 1.0)
        ax.plot([lo - pad, hi + pad], [lo - pad, hi + pad], color="black", linewidth=1.0)
        for curve, color in _CURVE_COLORS.items():
            pts = [r for r in cell_rows if r["curve"] == curve]
            if pts:
                ax.scatter(
                    [r["L0_m"] for r in pts],
                    [r["LR_m"] for r in pts],
                    s=14,
                    color=color,
                    label=curve,
                )
        ax.set_xlabel("in-place path length L0 [m]")
        ax.set_ylabel("path length LR [m]")
        ax.set_title(f"{objective} / {pattern}")
        ax.legend(fontsize=8)
        target = out_dir / f"scatter_{objective}_{pattern}.svg"
        _save(fig, target)
        written.append(target)
    return written


def plot_timing_fits(fits: Sequence[TimingModelFit], labels: Sequence[str], path) -> None:
    """Measured pipeline times per area with the fitted models dashed."""
    fig, ax = plt.subplots(figsize=(6, 4.5))
    colors = plt.rcParams["axes.prop_cycle"].by_key()["color"]
    for fit, label, color in zip(fits, labels, colors):
        ha = [a / 10_000.0 for a in fit.areas]
        ax.plot(ha, fit.times_s, "o-", color=color, label=f"{label} (r2={fit.r_squared:.3f})")
        predicted = [fit.c0 * x + fit.c1 for x in fit.xs]
        ax.plot(ha, predicted, "--", color=color, linewidth=0.8)
    ax.set_xlabel("field area [ha]")
    ax.set_ylabel("computation time [s]")
    ax.legend(fontsize=8)
    ax.set_title("pipeline time vs. area")
    _save(fig, path)
