"""Figure rendering and plain-text plot scripts.

Every figure-producing CLI command writes three kinds of artifact next to
each other: the CSV data, a rendered PNG (matplotlib, Agg backend), and a
gnuplot script that rebuilds the same figure from the CSVs by relative
path, so the data remain plottable without any Python environment.
"""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

DPI = 150


def _save(fig, path: Path) -> None:
    fig.savefig(path, dpi=DPI, bbox_inches="tight")
    plt.close(fig)


# ----------------------------------------------------------------------
# trajectory (solve)
# ----------------------------------------------------------------------

def render_solve(times, states, purities, png_path: Path) -> None:
    fig, (ax_top, ax_bot) = plt.subplots(2, 1, figsize=(7.0, 6.0), sharex=True)
    for idx, label in enumerate(("X", "Y", "Z")):
        ax_top.plot(times, states[:, idx], label=label)
    ax_top.set_ylabel("Bloch components")
    ax_top.legend(loc="best")
    ax_top.grid(alpha=0.3)
    ax_bot.plot(times, purities, color="tab:red")
    ax_bot.set_xlabel("t")
    ax_bot.set_ylabel("purity")
    ax_bot.set_ylim(0.45, 1.05)
    ax_bot.grid(alpha=0.3)
    _save(fig, png_path)


def gnuplot_solve(csv_name: str) -> str:
    return "\n".join(
        [
            "# Bloch trajectory and purity; run with: gnuplot <this file>",
            "set datafile separator ','",
            "set terminal pngcairo size 900,700",
            "set output 'solve.png'",
            "set multiplot layout 2,1",
            "set grid",
            "set ylabel 'Bloch components'",
            f"plot '{csv_name}' skip 1 using 1:2 with lines title 'X', \\",
            f"     '{csv_name}' skip 1 using 1:3 with lines title 'Y', \\",
            f"     '{csv_name}' skip 1 using 1:4 with lines title 'Z'",
            "set xlabel 't'",
            "set ylabel 'purity'",
            "set yrange [0.45:1.05]",
            f"plot '{csv_name}' skip 1 using 1:5 with lines notitle",
            "unset multiplot",
            "",
        ]
    )


# ----------------------------------------------------------------------
# distinguishability curves (delta-z)
# ----------------------------------------------------------------------

def render_delta_z(panels, png_path: Path) -> None:
    """panels: list of dicts mapping gamma -> (n, 2) curve array."""
    fig, axes = plt.subplots(
        len(panels), 1, figsize=(7.0, 3.2 * len(panels)), sharex=True, squeeze=False
    )
    for ax, panel in zip(axes[:, 0], panels):
        for gamma, curve in panel.items():
            ax.plot(curve[:, 0], curve[:, 1], label=f"gamma = {gamma:g}")
        ax.axhline(0.0, color="black", linewidth=0.6)
        ax.set_ylabel("dZ / Y0p")
        ax.legend(loc="best", fontsize=9)
        ax.grid(alpha=0.3)
    axes[-1, 0].set_xlabel("t")
    _save(fig, png_path)


def gnuplot_delta_z(panel_csvs: list[list[tuple[float, str]]]) -> str:
    lines = [
        "# Normalized distinguishability dZ(t)/Y0p; run with: gnuplot <this file>",
        "set datafile separator ','",
        f"set terminal pngcairo size 900,{350 * len(panel_csvs)}",
        "set output 'delta_z.png'",
        f"set multiplot layout {len(panel_csvs)},1",
        "set grid",
        "set ylabel 'dZ / Y0p'",
    ]
    for i, panel in enumerate(panel_csvs):
        if i == len(panel_csvs) - 1:
            lines.append("set xlabel 't'")
        plot_terms = [
            f"'{name}' skip 1 using 1:2 with lines title 'gamma = {gamma:g}'"
            for gamma, name in panel
        ]
        lines.append("plot " + ", \\\n     ".join(plot_terms))
    lines.extend(["unset multiplot", ""])
    return "\n".join(lines)


# ----------------------------------------------------------------------
# purity fields (purity-scan)
# ----------------------------------------------------------------------

def render_purity_fields(fields, t: float, png_path: Path) -> None:
    n = len(fields)
    ncols = 2 if n > 1 else 1
    nrows = (n + ncols - 1) // ncols
    fig, axes = plt.subplots(
        nrows, ncols, figsize=(5.2 * ncols, 4.2 * nrows), squeeze=False
    )
    for ax in axes.flat[n:]:
        ax.set_visible(False)
    mesh = None
    for ax, field in zip(axes.flat, fields):
        mesh = ax.pcolormesh(
            field.x0, field.y0, field.values.T, vmin=0.5, vmax=1.0, shading="nearest"
        )
        ax.set_title(f"gamma = {field.gamma:g}")
        ax.set_xlabel("X0")
        ax.set_ylabel("Y0")
        ax.set_aspect("equal")
    fig.colorbar(mesh, ax=axes, label="purity", shrink=0.85)
    fig.suptitle(f"purity at t = {t:g}")
    _save(fig, png_path)


def gnuplot_purity_fields(csv_by_gamma: list[tuple[float, str]], t: float, grid_n: int) -> str:
    ncols = 2 if len(csv_by_gamma) > 1 else 1
    nrows = (len(csv_by_gamma) + ncols - 1) // ncols
    lines = [
        f"# Purity over initial coherences at t = {t:g}; run with: gnuplot <this file>",
        "set datafile separator ','",
        f"set terminal pngcairo size {520 * ncols},{480 * nrows}",
        f"set output 'purity_scan_t{t:g}.png'",
        f"set multiplot layout {nrows},{ncols}",
        f"set dgrid3d {grid_n},{grid_n}",
        "set pm3d map",
        "set cbrange [0.5:1.0]",
        "set xlabel 'X0'",
        "set ylabel 'Y0'",
        "set size ratio -1",
    ]
    for gamma, name in csv_by_gamma:
        lines.append(f"set title 'gamma = {gamma:g}'")
        lines.append(f"splot '{name}' skip 1 using 1:2:3 with pm3d notitle")
    lines.extend(["unset multiplot", ""])
    return "\n".join(lines)
