"""Tabular and graphical output: expectation sweeps to CSV and companion
figures rendered to files next to the tables.

Float cells use repr() so a rerun with identical inputs is byte-identical.
"""

from __future__ import annotations

import csv
import math
import os

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from .gates import SqueezeParams
from .ladder import build_ladder
from .quaternion import AXIS_I, AXIS_J, AXIS_K, Quaternion, SliceAxis, exp_q
from .states import (
    expectations,
    pure_squeezed,
    pure_squeezed_closed_forms,
)

NAMED_AXES = {"i": AXIS_I, "j": AXIS_J, "k": AXIS_K}

SWEEP_FIELDS = (
    "r", "theta_deg", "axis", "mean_n", "var_x", "var_y", "var_product",
    "mandel_q", "closed_var_x", "closed_var_y", "closed_var_product",
    "closed_mandel_q",
)


def axis_name(axis: SliceAxis) -> str:
    for name, ax in NAMED_AXES.items():
        if (axis.ax, axis.ay, axis.az) == (ax.ax, ax.ay, ax.az):
            return name
    return f"{axis.ax:g},{axis.ay:g},{axis.az:g}"


def squeeze_from_polar(r: float, theta: float, axis: SliceAxis) -> SqueezeParams:
    u = exp_q(Quaternion(0.0, axis.ax * theta, axis.ay * theta,
                         axis.az * theta))
    return SqueezeParams.from_quaternion(u * r)


def expectation_sweep(rs: list[float], thetas: list[float],
                      axes: list[SliceAxis], dim: int = 48) -> list[dict]:
    """One row per (axis, r, theta): squeezed-vacuum moments, numeric and
    closed-form, in a deterministic iteration order."""
    rows = []
    for axis in axes:
        ladder = build_ladder(dim, axis)
        for r in rs:
            for theta in thetas:
                sp = squeeze_from_polar(r, theta, axis)
                state = pure_squeezed(sp, ladder)
                rep = expectations(state, ladder)
                cf = pure_squeezed_closed_forms(sp)
                rows.append({
                    "r": r,
                    "theta_deg": math.degrees(theta),
                    "axis": axis_name(axis),
                    "mean_n": rep.mean_n.real(),
                    "var_x": rep.var_x,
                    "var_y": rep.var_y,
                    "var_product": rep.var_x * rep.var_y,
                    "mandel_q": rep.mandel_q,
                    "closed_var_x": cf["var_x"],
                    "closed_var_y": cf["var_y"],
                    "closed_var_product": cf["var_product"],
                    "closed_mandel_q": cf["mandel_q"] if r > 0 else None,
                })
    return rows


def write_csv(rows: list[dict], fields: tuple[str, ...], path: str) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(fields)
        for row in rows:
            writer.writerow(
                ["" if row[f] is None
                 else (repr(row[f]) if isinstance(row[f], float) else row[f])
                 for f in fields])


def render_sweep_figures(rows: list[dict], outdir: str) -> list[str]:
    """Variance and Mandel-Q curves versus r, one line per (axis, theta)."""
    groups: dict[tuple, list[dict]] = {}
    for row in rows:
        groups.setdefault((row["axis"], row["theta_deg"]), []).append(row)
    paths = []

    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(9.0, 3.6))
    for (axis, theta), grp in sorted(groups.items()):
        grp = sorted(grp, key=lambda g: g["r"])
        rs = [g["r"] for g in grp]
        label = f"axis {axis}, theta {theta:g} deg"
        ax1.plot(rs, [g["var_x"] for g in grp], marker="o", label=label)
        ax1.plot(rs, [g["var_y"] for g in grp], marker="x", linestyle="--")
        ax2.plot(rs, [g["var_product"] for g in grp], marker="o", label=label)
    ax1.set_xlabel("r")
    ax1.set_ylabel("quadrature variance (o: X, x: Y)")
    ax2.set_xlabel("r")
    ax2.set_ylabel("variance product")
    ax2.axhline(1.0 / 16.0, color="gray", linewidth=0.8)
    ax1.legend(fontsize=7)
    fig.tight_layout()
    p = os.path.join(outdir, "variances.png")
    fig.savefig(p, dpi=110)
    plt.close(fig)
    paths.append(p)

    fig, ax = plt.subplots(figsize=(4.8, 3.6))
    for (axis, theta), grp in sorted(groups.items()):
        grp = sorted(grp, key=lambda g: g["r"])
        ax.plot([g["r"] for g in grp],
                [g["mandel_q"] if g["mandel_q"] is not None else float("nan")
                 for g in grp],
                marker="o", label=f"axis {axis}, theta {theta:g} deg")
    ax.set_xlabel("r")
    ax.set_ylabel("Mandel Q")
    ax.legend(fontsize=7)
    fig.tight_layout()
    p = os.path.join(outdir, "mandel_q.png")
    fig.savefig(p, dpi=110)
    plt.close(fig)
    paths.append(p)
    return paths
