"""Figures for benchmark reports, rendered to files.

Two figures per report: grouped solved counts as a bar chart, and
per-instance solve times as a scatter colored by verdict.
"""

from __future__ import annotations

from pathlib import Path
from typing import List

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)

from .bench import BenchReport  # noqa: E402

_COLORS = {"sat": "tab:green", "unsat": "tab:blue",
           "unknown": "tab:orange", "error": "tab:red"}


def write_figures(report: BenchReport, out_dir) -> List[Path]:
    """Write solved_counts.png and times_ms.png; returns the paths."""
    directory = Path(out_dir)
    directory.mkdir(parents=True, exist_ok=True)
    paths = [directory / "solved_counts.png", directory / "times_ms.png"]
    _solved_counts(report, paths[0])
    _times(report, paths[1])
    return paths


def _label(g) -> str:
    return f"{g.family} q{g.q} n{g.n} c{g.c}"


def _solved_counts(report: BenchReport, path: Path) -> None:
    fig, ax = plt.subplots(figsize=(7, 0.8 + 0.6 * max(len(report.groups), 1)))
    if report.groups:
        labels = [_label(g) for g in report.groups]
        ypos = range(len(report.groups))
        ax.barh(ypos, [g.total for g in report.groups],
                color="0.85", label="total")
        ax.barh(ypos, [g.solved for g in report.groups],
                color="tab:green", label="solved")
        ax.set_yticks(list(ypos), labels)
        ax.invert_yaxis()
        ax.legend(loc="lower right")
        for y, g in zip(ypos, report.groups):
            ax.annotate(f"{g.solved}/{g.total}", (g.total, y),
                        xytext=(4, 0), textcoords="offset points",
                        va="center", fontsize=9)
    else:
        ax.text(0.5, 0.5, "no instances", ha="center", va="center")
        ax.set_axis_off()
    ax.set_xlabel("instances solved")
    ax.set_title("solved counts by instance family")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def _times(report: BenchReport, path: Path) -> None:
    fig, ax = plt.subplots(figsize=(8, 4))
    if report.results:
        xs = range(len(report.results))
        ys = [max(r.time_ms, 1) for r in report.results]
        colors = [_COLORS.get(r.verdict, "tab:gray") for r in report.results]
        ax.scatter(xs, ys, c=colors, s=18)
        ax.set_yscale("log")
        ax.set_xlabel("instance (report order)")
        ax.set_ylabel("solve time [ms]")
        handles = [plt.Line2D([], [], marker="o", linestyle="", color=c,
                              label=v) for v, c in _COLORS.items()
                   if any(r.verdict == v for r in report.results)]
        if handles:
            ax.legend(handles=handles, fontsize=8)
    else:
        ax.text(0.5, 0.5, "no instances", ha="center", va="center")
        ax.set_axis_off()
    ax.set_title("per-instance solve times")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
