"""Static figures written next to the CSV/JSON reports."""

from __future__ import annotations

import numpy as np
from matplotlib.figure import Figure

from .surface import OscillatorPair, branch_points

SHEET_COLORS = ("#1b6ca8", "#d1495b", "#edae49", "#00798c")


def _mark_branch_points(ax, osc: OscillatorPair):
    bp = branch_points(osc)
    pts = np.array(bp.all())
    ax.plot(pts.real, pts.imag, "o", color="k", ms=5, label="branch points")


def plot_trace(track, osc: OscillatorPair, filename, title: str | None = None):
    """Left: the path in the g plane. Right: the four labeled roots in the E plane."""
    fig = Figure(figsize=(10, 4.5))
    ax_g, ax_e = fig.subplots(1, 2)
    ax_g.plot(track.g.real, track.g.imag, "-", color="0.3", lw=1)
    ax_g.plot([track.g[0].real], [track.g[0].imag], "s", color="0.3", label="base")
    _mark_branch_points(ax_g, osc)
    ax_g.set_xlabel("Re g")
    ax_g.set_ylabel("Im g")
    ax_g.set_aspect("equal", adjustable="datalim")
    ax_g.legend(loc="best", fontsize=8)
    for i, lab in enumerate(track.labels):
        E = track.roots[:, i]
        c = SHEET_COLORS[i % 4]
        ax_e.plot(E.real, E.imag, "-", color=c, lw=1.2, label="from sheet %d" % lab)
        ax_e.plot([E[0].real], [E[0].imag], "o", color=c, ms=5)
        ax_e.plot([E[-1].real], [E[-1].imag], "x", color=c, ms=7)
    ax_e.set_xlabel("Re E")
    ax_e.set_ylabel("Im E")
    ax_e.legend(loc="best", fontsize=8)
    if title:
        fig.suptitle(title)
    fig.tight_layout()
    fig.savefig(filename, dpi=120)
    return filename


def plot_grand_tour(tour, osc: OscillatorPair, filename):
    """Tour loops in the g plane and the ladder of E(0) values reached."""
    fig = Figure(figsize=(10, 4.5))
    ax_g, ax_l = fig.subplots(1, 2)
    for k, leg in enumerate(tour.legs[1:], start=1):
        pts = np.array(leg.path.points())
        ax_g.plot(pts.real, pts.imag, ("-", "--", ":")[(k - 1) % 3], color=SHEET_COLORS[k % 4],
                  lw=2.5 - 0.6 * k, label="leg %d" % k)
    _mark_branch_points(ax_g, osc)
    ax_g.set_xlabel("Re g")
    ax_g.set_ylabel("Im g")
    ax_g.set_aspect("equal", adjustable="datalim")
    ax_g.legend(loc="best", fontsize=8)
    steps = np.arange(len(tour.legs))
    ax_l.step(steps, tour.energies, where="mid", color="0.3")
    for k, leg in enumerate(tour.legs):
        ax_l.plot(k, leg.energy, "o", color=SHEET_COLORS[leg.sheet.number - 1])
        ax_l.annotate("sheet %d" % leg.sheet.number, (k, leg.energy), textcoords="offset points",
                      xytext=(6, 4), fontsize=8)
    ax_l.set_xticks(steps)
    ax_l.set_xlabel("leg")
    ax_l.set_ylabel("E(0)")
    fig.tight_layout()
    fig.savefig(filename, dpi=120)
    return filename
