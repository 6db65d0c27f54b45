"""Figures for run and divergence reports (PNG via the Agg backend)."""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .divergence import DivergenceReport  # noqa: E402
from .maintenance import DIVERGENT, RunReport, ratio  # noqa: E402


def _sizes(report: RunReport):
    steps = [0] + [s.step_index for s in report.steps]
    gamma = [report.initial_size] + [s.solution_size for s in report.steps]
    opt = None
    if report.has_oracle:
        opt = [report.initial_opt] + [s.optimum_size for s in report.steps]
    return steps, gamma, opt


def plot_run(report: RunReport, path: str | Path, title: str = "") -> Path:
    """Solution size against the optimum, and their ratio, per step."""
    steps, gamma, opt = _sizes(report)
    fig, (ax1, ax2) = plt.subplots(2, 1, sharex=True, figsize=(7, 5))
    ax1.step(steps, gamma, where="post", label="maintained", color="C0")
    if opt is not None:
        ax1.step(steps, opt, where="post", label="optimum", color="C1")
        ax2.plot(steps, [float(ratio(g, o)) for g, o in zip(gamma, opt)], color="C2")
        ax2.axhline(float(report.max_ratio), color="0.5", lw=0.8, ls="--")
    ax2.set_ylabel("ratio")
    ax2.set_xlabel("step")
    ax1.set_ylabel("solution size")
    ax1.legend(frameon=False)
    if title:
        ax1.set_title(title)
    fig.tight_layout()
    path = Path(path)
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def plot_divergence(div: DivergenceReport, path: str | Path, title: str = "") -> Path:
    steps, gamma, opt = _sizes(div.run)
    fig, ax = plt.subplots(figsize=(7, 4))
    ax.step(steps, gamma, where="post", label="maintained", color="C0")
    ax.step(steps, opt, where="post", label="optimum", color="C1")
    marks = [s.step_index for s, c in zip(div.run.steps, div.classes) if c == DIVERGENT]
    ax.scatter(marks, [gamma[i] for i in marks], color="C3", s=12, zorder=3,
               label=f"divergent (d={div.divergent_steps})")
    ax.set_xlabel("step")
    ax.set_ylabel("solution size")
    ax.set_title(title or f"final ratio {div.final_ratio}, bound {div.bound_rhs}")
    ax.legend(frameon=False)
    fig.tight_layout()
    path = Path(path)
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path
