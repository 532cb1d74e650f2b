"""Figure rendering for sweep and trajectory reports.

Figures are written straight to files next to the delimited output; no
interactive backend is touched.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

__all__ = [
    "save_sweep_nk_figure",
    "save_sweep_ml_figure",
    "save_trajectory_figure",
]

FIGSIZE = (6.4, 4.2)
DPI = 150


def _finish(fig, ax, path):
    ax.grid(True, alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=DPI)
    plt.close(fig)


def save_sweep_nk_figure(records, path):
    """SLEM against the set count, one line per star count."""
    solved = [r for r in records if r.slem is not None]
    fig, ax = plt.subplots(figsize=FIGSIZE)
    for k in sorted({r.params.k for r in solved}):
        rows = sorted((r.params.n, r.slem) for r in solved if r.params.k == k)
        ax.plot([n for n, _ in rows], [s for _, s in rows], marker="o", label=f"k = {k}")
    if solved:
        first = solved[0].params
        ax.set_title(f"convergence factor, m = {first.m}, L = {first.L}")
    ax.set_xlabel("number of sets n")
    ax.set_ylabel("SLEM")
    ax.legend()
    _finish(fig, ax, path)


def save_sweep_ml_figure(records, path):
    """SLEM against the branch length, one line per branch count."""
    solved = [r for r in records if r.slem is not None]
    fig, ax = plt.subplots(figsize=FIGSIZE)
    for L in sorted({r.params.L for r in solved}):
        rows = sorted((r.params.m, r.slem) for r in solved if r.params.L == L)
        ax.plot([m for m, _ in rows], [s for _, s in rows], marker="o", label=f"L = {L}")
    if solved:
        first = solved[0].params
        ax.set_title(f"convergence factor, n = {first.n}, k = {first.k}")
    ax.set_xlabel("branch length m")
    ax.set_ylabel("SLEM")
    ax.legend()
    _finish(fig, ax, path)


def save_trajectory_figure(stats, path, title=None):
    """Log-scale distance-to-consensus curve of a simulation run."""
    fig, ax = plt.subplots(figsize=FIGSIZE)
    ax.semilogy(range(stats.geo_mean.size), stats.geo_mean)
    ax.set_xlabel("iteration")
    ax.set_ylabel("normalized distance (geometric mean)")
    if title:
        ax.set_title(title)
    _finish(fig, ax, path)
