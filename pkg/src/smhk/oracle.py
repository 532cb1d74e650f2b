"""Derivative-free numerical optimum for the orbit weights.

An independent check on the closed forms: minimize the SLEM directly
over the m + 1 orbit weights with a multi-start Nelder-Mead simplex
search (reflect/expand/contract/shrink coefficients 1, 2, 0.5, 0.5).
The objective goes through the stratified blocks, so one evaluation
costs a few tiny eigenproblems instead of a dense one. The SLEM is
convex in the weights but not smooth at eigenvalue crossings, which is
exactly where the optimum sits; a simplex search needs no gradients
there.

One restart is seeded on the closed-form solution itself, turning the
search into a local-optimality certificate even if the random restarts
miss the basin.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .spectral import slem_blocks, stratify
from .topology import SmhkParams
from .weights import (
    InconsistentRootError,
    NoRootError,
    OrbitWeights,
    analytical_weights,
)

__all__ = [
    "OracleConfig",
    "OracleResult",
    "default_search_box",
    "objective",
    "optimize_weights",
]

# Initial simplex edge lengths as a fraction of the box width: tight
# around the closed-form seed, wide for midpoint/random restarts.
SEED_STEP_FRACTION = 0.02
RANDOM_STEP_FRACTION = 0.1


@dataclass(frozen=True)
class OracleConfig:
    """Search settings.

    restarts: simplex restarts (first is the closed-form seed, second
        the box midpoint, the rest uniform random in the box)
    max_iters: iteration cap per restart
    simplex_tol: terminate a restart once the simplex diameter falls
        below this
    seed: generator seed for the random restarts
    search_box: per-coordinate (low, high) bounds; None derives the
        default box from the parameters
    """

    restarts: int = 16
    max_iters: int = 2000
    simplex_tol: float = 1e-9
    seed: int = 0
    search_box: tuple[tuple[float, float], ...] | None = None


@dataclass(frozen=True)
class OracleResult:
    """Best point found across restarts.

    restart_values holds the best objective per restart in restart
    order; best_restart is the index of the winner (ties go to the
    earlier restart).
    """

    weights: OrbitWeights
    slem: float
    evaluations: int
    restart_values: tuple[float, ...]
    best_restart: int


def default_search_box(params: SmhkParams) -> tuple[tuple[float, float], ...]:
    """Per-coordinate bounds: core weight in [0, 2/(k(n-1))], path
    weights in [0, 1]. Keeps every diagonal entry in a sane range."""
    core_high = 2.0 / (params.k * (params.n - 1))
    return ((0.0, core_high),) + ((0.0, 1.0),) * params.m


def objective(params: SmhkParams, weights) -> float:
    """SLEM of the weight matrix for the given orbit weights.

    Computed from the stratified blocks; spot-validated against the
    dense spectrum of the assembled matrix in the test suite.
    """
    return slem_blocks(stratify(params, weights))


def _nelder_mead(fn, start, steps, low, high, max_iters, tol):
    """Standard simplex minimization clamped to a box.

    Returns (best_point, best_value, evaluations). Points outside the
    box are clamped before evaluation, so the simplex itself stays
    feasible.
    """
    dim = start.size

    def clamp(x):
        return np.clip(x, low, high)

    points = [clamp(start.copy())]
    for d in range(dim):
        vertex = start.copy()
        step = steps[d] if start[d] + steps[d] <= high[d] else -steps[d]
        vertex[d] += step
        points.append(clamp(vertex))
    values = [fn(p) for p in points]
    evaluations = dim + 1

    for _ in range(max_iters):
        order = np.argsort(values, kind="stable")
        points = [points[i] for i in order]
        values = [values[i] for i in order]
        diameter = max(np.max(np.abs(p - points[0])) for p in points[1:])
        if diameter < tol:
            break

        centroid = np.mean(points[:-1], axis=0)
        worst = points[-1]
        reflected = clamp(centroid + (centroid - worst))
        f_reflected = fn(reflected)
        evaluations += 1

        if f_reflected < values[0]:
            expanded = clamp(centroid + 2.0 * (centroid - worst))
            f_expanded = fn(expanded)
            evaluations += 1
            if f_expanded < f_reflected:
                points[-1], values[-1] = expanded, f_expanded
            else:
                points[-1], values[-1] = reflected, f_reflected
        elif f_reflected < values[-2]:
            points[-1], values[-1] = reflected, f_reflected
        else:
            if f_reflected < values[-1]:
                contracted = clamp(centroid + 0.5 * (reflected - centroid))
            else:
                contracted = clamp(centroid + 0.5 * (worst - centroid))
            f_contracted = fn(contracted)
            evaluations += 1
            if f_contracted < min(f_reflected, values[-1]):
                points[-1], values[-1] = contracted, f_contracted
            else:
                # Shrink toward the best vertex.
                for i in range(1, dim + 1):
                    points[i] = clamp(points[0] + 0.5 * (points[i] - points[0]))
                    values[i] = fn(points[i])
                evaluations += dim

    best = int(np.argmin(values))
    return points[best], values[best], evaluations


def optimize_weights(
    params: SmhkParams, config: OracleConfig | None = None
) -> OracleResult:
    """Multi-start simplex minimization of the SLEM over orbit weights.

    Deterministic for a fixed config: restart start points, the random
    generator, and the tie-breaking are all fixed by the seed and the
    restart order. Always returns the best point found.
    """
    cfg = config or OracleConfig()
    if cfg.restarts < 1:
        raise ValueError(f"restarts must be >= 1 (got {cfg.restarts})")
    box = cfg.search_box if cfg.search_box is not None else default_search_box(params)
    if len(box) != params.m + 1:
        raise ValueError(
            f"search box needs {params.m + 1} coordinate ranges, got {len(box)}"
        )
    low = np.array([b[0] for b in box], dtype=float)
    high = np.array([b[1] for b in box], dtype=float)
    if not np.all(low < high):
        raise ValueError("search box must have lower < upper per coordinate")
    width = high - low

    def fn(x):
        return objective(params, x)

    starts: list[tuple[np.ndarray, np.ndarray]] = []
    try:
        seed_point = analytical_weights(params).weights.array
        starts.append((np.clip(seed_point, low, high), SEED_STEP_FRACTION * width))
    except (NoRootError, InconsistentRootError):
        pass
    starts.append((low + 0.5 * width, RANDOM_STEP_FRACTION * width))
    rng = np.random.default_rng(cfg.seed)
    while len(starts) < cfg.restarts:
        point = low + width * rng.uniform(size=params.m + 1)
        starts.append((point, RANDOM_STEP_FRACTION * width))

    best_point = None
    best_value = np.inf
    best_restart = -1
    restart_values = []
    total_evaluations = 0
    for index, (start, steps) in enumerate(starts[: cfg.restarts]):
        point, value, evaluations = _nelder_mead(
            fn, start, steps, low, high, cfg.max_iters, cfg.simplex_tol
        )
        total_evaluations += evaluations
        restart_values.append(value)
        if value < best_value:
            best_point, best_value, best_restart = point, value, index

    weights = OrbitWeights(tuple(float(v) for v in best_point))
    return OracleResult(
        weights=weights,
        slem=objective(params, weights),
        evaluations=total_evaluations,
        restart_values=tuple(restart_values),
        best_restart=best_restart,
    )
