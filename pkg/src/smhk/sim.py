"""Synchronous averaging iteration x(t+1) = W x(t) over random starts.

Each trial draws an independent start vector, iterates the full weight
matrix, and records the Euclidean distance to the trial's own average,
normalized by its initial value. Trials aggregate by geometric mean
(the natural average for log-scale decay curves). The distance is not
forced to shrink on every single step, since the matrix may have
negative eigenvalues; the testable quantity is the fitted asymptotic
per-step rate, which matches the SLEM.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .spectral import assemble_full
from .topology import SmhkParams

__all__ = [
    "SimConfig",
    "TrajectoryStats",
    "DISTRIBUTION",
    "simulate",
    "distance_trajectory",
    "decay_rate",
    "fit_decay_rate",
]

DISTRIBUTION = "uniform[0,1]"

CONSTANT_START_TOL = 1e-14


@dataclass(frozen=True)
class SimConfig:
    """Trial count, iteration count, and the base seed.

    Trial r draws its start vector from seed + r, uniform on [0, 1] per
    node, so results are independent of execution order.
    """

    trials: int = 1000
    iterations: int = 200
    seed: int = 0

    def __post_init__(self):
        if self.trials < 1:
            raise ValueError(f"trials must be >= 1 (got {self.trials})")
        if self.iterations < 1:
            raise ValueError(f"iterations must be >= 1 (got {self.iterations})")


@dataclass(frozen=True)
class TrajectoryStats:
    """Aggregated distance trajectories.

    geo_mean[t] is the geometric mean over trials of the normalized
    distance to consensus after t iterations (geo_mean[0] = 1);
    final_distances holds each trial's last value. Trials whose start
    vector is numerically constant report zero distance and are
    excluded from the geometric mean (trials_used counts the rest).
    """

    geo_mean: np.ndarray
    final_distances: np.ndarray
    trials_used: int
    config: SimConfig


def simulate(params: SmhkParams, weights, config: SimConfig | None = None) -> TrajectoryStats:
    """Run seeded trials of the averaging iteration on the full matrix."""
    cfg = config or SimConfig()
    matrix = assemble_full(params, weights)
    size = matrix.shape[0]

    starts = np.empty((size, cfg.trials))
    for r in range(cfg.trials):
        starts[:, r] = np.random.default_rng(cfg.seed + r).uniform(0.0, 1.0, size)
    targets = starts.mean(axis=0)
    initial_dev = np.linalg.norm(starts - targets, axis=0)
    active = initial_dev >= CONSTANT_START_TOL

    distances = np.zeros((cfg.iterations + 1, cfg.trials))
    distances[0, active] = 1.0
    state = starts
    for t in range(1, cfg.iterations + 1):
        state = matrix @ state
        deviation = np.linalg.norm(state - targets, axis=0)
        distances[t, active] = deviation[active] / initial_dev[active]

    if active.any():
        with np.errstate(divide="ignore"):
            geo_mean = np.exp(np.log(distances[:, active]).mean(axis=1))
    else:
        geo_mean = np.zeros(cfg.iterations + 1)
    final = distances[-1].copy()
    geo_mean.setflags(write=False)
    final.setflags(write=False)
    return TrajectoryStats(
        geo_mean=geo_mean,
        final_distances=final,
        trials_used=int(active.sum()),
        config=cfg,
    )


def distance_trajectory(matrix, start, iterations: int) -> np.ndarray:
    """Normalized distance to the mean for a single start vector.

    out[0] = 1; rejects a (numerically) constant start, whose distance
    is identically zero.
    """
    x = np.asarray(start, dtype=float).copy()
    mean = x.mean()
    initial = float(np.linalg.norm(x - mean))
    if initial < CONSTANT_START_TOL:
        raise ValueError("start vector is constant; distance is identically zero")
    out = np.empty(iterations + 1)
    out[0] = 1.0
    for t in range(1, iterations + 1):
        x = matrix @ x
        out[t] = float(np.linalg.norm(x - mean)) / initial
    return out


def fit_decay_rate(curve, window: tuple[int, int] | None = None) -> float:
    """Per-step decay rate from a log-linear least-squares fit.

    window is an inclusive (t0, t1) iteration range; the default is the
    last half of the curve, past the transient. Raises ValueError when
    the window contains a nonpositive distance (rate undefined).
    """
    values = np.asarray(curve, dtype=float)
    last = values.size - 1
    t0, t1 = window if window is not None else (last // 2, last)
    if not (0 <= t0 < t1 <= last):
        raise ValueError(f"window ({t0}, {t1}) outside recorded iterations [0, {last}]")
    segment = values[t0 : t1 + 1]
    if np.any(segment <= 0.0):
        raise ValueError("decay rate undefined: nonpositive distance in window")
    steps = np.arange(t0, t1 + 1)
    slope = np.polyfit(steps, np.log(segment), 1)[0]
    return float(math.exp(slope))


def decay_rate(stats: TrajectoryStats, window: tuple[int, int] | None = None) -> float:
    """Fitted asymptotic per-step rate of the aggregated trajectory."""
    return fit_decay_rate(stats.geo_mean, window)
