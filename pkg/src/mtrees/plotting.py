"""Figures written next to the CLI's delimited reports."""

from __future__ import annotations

from pathlib import Path
from typing import Sequence

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .analysis import AnalysisReport, EntropyRow  # noqa: E402

_STYLE = {
    "figure.figsize": (6.0, 4.0),
    "font.size": 10,
    "axes.grid": True,
    "grid.alpha": 0.3,
    "savefig.dpi": 120,
    "svg.hashsalt": "mtrees",
}


def _save(fig, path: Path) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    fig.tight_layout()
    fig.savefig(path, metadata={"Software": None} if path.suffix == ".png" else None)
    plt.close(fig)
    return path


def plot_degree_law(report: AnalysisReport, path: Path) -> Path:
    n = sum(report.degree_histogram.values())
    ks = sorted(report.degree_histogram)
    cum = [sum(c for d, c in report.degree_histogram.items() if d >= k) / n for k in ks]
    with plt.rc_context(_STYLE):
        fig, ax = plt.subplots()
        ax.semilogy(ks, cum, "o", label="measured")
        ax.semilogy(ks, [2.0 ** (2 - k) for k in ks], "-", lw=1, label=r"$2^{2-k}$")
        ax.set_xlabel("degree k")
        ax.set_ylabel(r"$P_{\rm cum}(k)$")
        ax.set_title(f"Cumulative degree distribution, M({report.t})")
        ax.legend()
        return _save(fig, path)


def plot_distance_scaling(reports: Sequence[AnalysisReport], path: Path) -> Path:
    ts = [r.t for r in reports]
    with plt.rc_context(_STYLE):
        fig, ax = plt.subplots()
        ax.plot(ts, [r.diameter for r in reports], "s-", label="diameter")
        ax.plot(ts, [r.avg_distance for r in reports], "o-", label="average distance")
        ax.set_xlabel(r"t  ($\log_2 |V| - 1$)")
        ax.set_ylabel("distance")
        ax.legend()
        return _save(fig, path)


def plot_entropy(partial: Sequence[tuple[int, float]], table: Sequence[EntropyRow], path: Path) -> Path:
    with plt.rc_context(_STYLE):
        fig, ax = plt.subplots()
        ax.plot([t for t, _ in partial], [h for _, h in partial], "o-", ms=3, label=r"$h_t$")
        for row in table[1:]:
            ax.axhline(row.entropy, ls="--", lw=0.8, color="gray")
            ax.annotate(f"{row.name} {row.entropy}", (partial[-1][0], row.entropy),
                        ha="right", va="bottom", fontsize=7, color="gray")
        ax.set_xlabel("t")
        ax.set_ylabel("spanning-tree entropy")
        ax.legend(loc="lower right")
        return _save(fig, path)
