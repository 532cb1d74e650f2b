"""Independent simplex search against the closed forms."""

import numpy as np
import pytest

from smhk.oracle import (
    OracleConfig,
    OracleResult,
    default_search_box,
    objective,
    optimize_weights,
)
from smhk.spectral import assemble_full, slem_full
from smhk.topology import SmhkParams
from smhk.weights import solve_theta

REF_PARAMS = SmhkParams(3, 2, 2, 3)


def test_objective_of_zero_weights_is_one():
    # all-zero weights give the identity iteration
    assert objective(SmhkParams(3, 2, 2, 2), (0.0, 0.0, 0.0)) == pytest.approx(1.0, abs=1e-14)


def test_objective_spot_checked_against_dense_spectrum():
    rng = np.random.default_rng(31)
    for params in (SmhkParams(2, 2, 1, 1), SmhkParams(3, 2, 2, 3), SmhkParams(2, 3, 3, 2)):
        for _ in range(3):
            w = rng.uniform(0.0, 1.0, params.m + 1)
            dense = slem_full(assemble_full(params, w)).slem
            assert objective(params, w) == pytest.approx(dense, abs=1e-10)


def test_objective_at_analytical_weights_equals_cos_theta():
    solution = solve_theta(REF_PARAMS)
    assert objective(REF_PARAMS, solution.weights) == pytest.approx(solution.slem, abs=1e-10)


def test_objective_is_convex_along_segments():
    rng = np.random.default_rng(17)
    for params in (SmhkParams(2, 2, 2, 2), SmhkParams(3, 2, 1, 3)):
        box = default_search_box(params)
        low = np.array([b[0] for b in box])
        high = np.array([b[1] for b in box])
        for _ in range(20):
            a = low + (high - low) * rng.uniform(size=params.m + 1)
            b = low + (high - low) * rng.uniform(size=params.m + 1)
            mid = objective(params, (a + b) / 2.0)
            assert mid <= (objective(params, a) + objective(params, b)) / 2.0 + 1e-10


def test_default_search_box_bounds():
    box = default_search_box(SmhkParams(3, 2, 2, 3))
    assert box[0] == (0.0, 0.5)
    assert box[1:] == ((0.0, 1.0), (0.0, 1.0))


def test_optimizer_is_deterministic():
    cfg = OracleConfig(restarts=4, seed=9)
    first = optimize_weights(REF_PARAMS, cfg)
    second = optimize_weights(REF_PARAMS, cfg)
    assert first == second
    assert isinstance(first, OracleResult)


def test_optimizer_matches_analytical_optimum():
    solution = solve_theta(REF_PARAMS)
    result = optimize_weights(REF_PARAMS, OracleConfig(restarts=6))
    # the search may never land meaningfully below the analytical optimum
    assert result.slem >= solution.slem - 1e-5
    assert result.slem == pytest.approx(solution.slem, abs=1e-5)
    assert result.weights[2] == pytest.approx(0.5, abs=1e-3)
    assert result.weights[0] == pytest.approx(solution.weights[0], abs=1e-3)
    assert result.weights[1] == pytest.approx(solution.weights[1], abs=1e-3)


def test_recovered_core_weight_scales_with_k():
    cfg = OracleConfig(restarts=4)
    w2 = optimize_weights(SmhkParams(2, 2, 1, 1), cfg).weights[0]
    w3 = optimize_weights(SmhkParams(2, 3, 1, 1), cfg).weights[0]
    assert 2.0 * w2 == pytest.approx(3.0 * w3, abs=1e-3)


def test_result_is_self_consistent():
    result = optimize_weights(SmhkParams(2, 2, 1, 2), OracleConfig(restarts=3))
    assert result.slem == objective(SmhkParams(2, 2, 1, 2), result.weights)
    assert len(result.restart_values) == 3
    assert 0 <= result.best_restart < 3
    assert result.restart_values[result.best_restart] == min(result.restart_values)
    assert result.evaluations > 0


def test_config_validation():
    with pytest.raises(ValueError):
        optimize_weights(REF_PARAMS, OracleConfig(restarts=0))
    with pytest.raises(ValueError):
        optimize_weights(REF_PARAMS, OracleConfig(search_box=((0.0, 1.0),)))
    with pytest.raises(ValueError):
        optimize_weights(
            REF_PARAMS,
            OracleConfig(search_box=((0.5, 0.5), (0.0, 1.0), (0.0, 1.0))),
        )
