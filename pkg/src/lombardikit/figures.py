"""Matplotlib figures for closure-search reports."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

STYLE = {
    "font.family": "serif",
    "font.size": 9,
    "axes.labelsize": 9,
    "axes.titlesize": 9,
    "xtick.labelsize": 8,
    "ytick.labelsize": 8,
    "axes.spines.top": False,
    "axes.spines.right": False,
    "lines.linewidth": 0.8,
    "savefig.dpi": 150,
}

# keep PNG bytes independent of the matplotlib version
_METADATA = {"Software": None}


def _certified(seq) -> list:
    return [inc for inc, c in zip(seq["increments"], seq["clauses"]) if c == "ok"]


def certify_figure(report: dict, path, max_paths: int = 60):
    """Two panels: tau along the fan for sampled candidates, and the increment histogram.

    ``report`` is the dict from ``SearchReport.to_dict(full=True)``.
    """
    seqs = report.get("sequences")
    if seqs is None:
        raise ValueError("the figure needs the per-candidate sequences (full report)")
    with plt.rc_context(STYLE):
        fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(7.0, 2.8), constrained_layout=True)
        tilts = sorted({s["tilt"] for s in seqs})
        cmap = plt.get_cmap("viridis")
        shown = 0
        for s in seqs:
            incs = _certified(s)
            if not incs or shown >= max_paths:
                continue
            c = cmap(tilts.index(s["tilt"]) / max(1, len(tilts) - 1))
            ax1.plot(np.arange(len(incs) + 1), np.concatenate([[0.0], np.cumsum(incs)]), color=c, alpha=0.6)
            shown += 1
        ax1.set_xlabel("fan step $i$")
        ax1.set_ylabel(r"$\tau(p_i) - \tau(p_0)$")
        ax1.set_title(f"k = {report['k']}, {shown} candidates")

        every = np.array([x for s in seqs for x in _certified(s)])
        if every.size:
            pos = every[every > 0]
            if pos.size:
                bins = np.logspace(np.log10(pos.min()), np.log10(pos.max()) + 1e-9, 40)
                ax2.hist(pos, bins=bins, color="0.4")
                ax2.set_xscale("log")
            if (every <= 0).any():
                ax2.text(0.02, 0.95, f"{int((every <= 0).sum())} non-positive", transform=ax2.transAxes, va="top")
        else:
            ax2.text(0.5, 0.5, "no certified steps", transform=ax2.transAxes, ha="center")
        ax2.set_xlabel(r"$\tau$ increment")
        ax2.set_ylabel("steps")
        ax2.set_title(report["verdict"][:60], fontsize=7)
        fig.savefig(path, format="png", metadata=_METADATA)
        plt.close(fig)
    return path
