"""Averaging-iteration simulator: trajectories, aggregation, rate fits."""

import numpy as np
import pytest

from smhk.sim import (
    SimConfig,
    decay_rate,
    distance_trajectory,
    fit_decay_rate,
    simulate,
)
from smhk.spectral import assemble_full, eig_symmetric, slem_full
from smhk.topology import SmhkParams
from smhk.weights import solve_theta

REF_PARAMS = SmhkParams(3, 2, 2, 3)


@pytest.fixture(scope="module")
def reference():
    solution = solve_theta(REF_PARAMS)
    matrix = assemble_full(REF_PARAMS, solution.weights)
    return solution, matrix


def test_constant_vector_is_a_fixed_point(reference):
    _, matrix = reference
    ones = np.ones(matrix.shape[0])
    assert np.max(np.abs(matrix @ ones - ones)) <= 1e-12


def test_constant_start_rejected(reference):
    _, matrix = reference
    with pytest.raises(ValueError, match="constant"):
        distance_trajectory(matrix, np.ones(matrix.shape[0]), 5)


def test_slem_eigenvector_decays_geometrically(reference):
    solution, matrix = reference
    vals, vecs = eig_symmetric(matrix)
    spectrum = slem_full(matrix)
    if spectrum.slem == pytest.approx(spectrum.lambda2, abs=1e-12):
        index = 1
    else:
        index = vals.size - 1
    vector = vecs[:, index]
    curve = distance_trajectory(matrix, vector, 60)
    expected = spectrum.slem ** np.arange(61)
    assert np.allclose(curve, expected, rtol=1e-9)
    assert fit_decay_rate(curve) == pytest.approx(spectrum.slem, abs=1e-10)


def test_mean_is_conserved(reference):
    _, matrix = reference
    rng = np.random.default_rng(2)
    x = rng.uniform(0.0, 1.0, matrix.shape[0])
    mean0 = x.mean()
    for _ in range(50):
        x = matrix @ x
        assert x.mean() == pytest.approx(mean0, rel=1e-12)


def test_simulate_starts_at_one_and_uses_all_trials(reference):
    solution, _ = reference
    stats = simulate(REF_PARAMS, solution.weights, SimConfig(trials=20, iterations=30, seed=4))
    assert stats.geo_mean[0] == 1.0
    assert stats.trials_used == 20
    assert stats.geo_mean.shape == (31,)
    assert stats.final_distances.shape == (20,)
    assert np.all(stats.final_distances > 0.0)


def test_simulate_is_deterministic(reference):
    solution, _ = reference
    cfg = SimConfig(trials=16, iterations=25, seed=11)
    first = simulate(REF_PARAMS, solution.weights, cfg)
    second = simulate(REF_PARAMS, solution.weights, cfg)
    assert np.array_equal(first.geo_mean, second.geo_mean)
    assert np.array_equal(first.final_distances, second.final_distances)


def test_fitted_rate_matches_slem(reference):
    solution, _ = reference
    stats = simulate(REF_PARAMS, solution.weights, SimConfig(trials=200, iterations=200, seed=0))
    rate = decay_rate(stats)
    assert rate == pytest.approx(solution.slem, rel=0.02)


def test_optimal_weights_decay_fastest(reference):
    solution, _ = reference
    cfg = SimConfig(trials=64, iterations=200, seed=8)
    optimal_rate = decay_rate(simulate(REF_PARAMS, solution.weights, cfg))
    rng = np.random.default_rng(15)
    base = solution.weights.array
    for _ in range(10):
        perturbed = base + rng.uniform(-0.05, 0.05, base.size)
        perturbed = np.clip(perturbed, 0.0, 1.0)
        perturbed_rate = decay_rate(simulate(REF_PARAMS, perturbed, cfg))
        assert optimal_rate <= perturbed_rate + 1e-4


def test_longer_branches_slow_the_decay():
    small = SmhkParams(3, 2, 2, 3)
    large = SmhkParams(3, 2, 2, 20)
    cfg = SimConfig(trials=50, iterations=60, seed=3)
    curve_small = simulate(small, solve_theta(small).weights, cfg).geo_mean
    curve_large = simulate(large, solve_theta(large).weights, cfg).geo_mean
    assert np.all(curve_large[1:] > curve_small[1:])


def test_fit_decay_rate_window_validation():
    curve = 0.9 ** np.arange(51)
    assert fit_decay_rate(curve, (10, 50)) == pytest.approx(0.9, abs=1e-12)
    with pytest.raises(ValueError):
        fit_decay_rate(curve, (40, 40))
    with pytest.raises(ValueError):
        fit_decay_rate(curve, (-1, 50))
    with pytest.raises(ValueError):
        fit_decay_rate(curve, (10, 51))
    zeroed = curve.copy()
    zeroed[45] = 0.0
    with pytest.raises(ValueError, match="undefined"):
        fit_decay_rate(zeroed, (40, 50))


def test_sim_config_validation():
    with pytest.raises(ValueError):
        SimConfig(trials=0)
    with pytest.raises(ValueError):
        SimConfig(iterations=0)
