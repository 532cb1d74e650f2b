"""Closed forms: evaluators, the angle equation, and the certified solver."""

import math

import numpy as np
import pytest

from smhk.spectral import assemble_full, slem_full
from smhk.topology import SmhkParams
from smhk.weights import (
    SingularEvaluationError,
    analytical_weights,
    angle_factor,
    angle_residual,
    bridge_weight,
    core_weight,
    solve_theta,
)

# Reference optimum for the (3, 2, 2, 3) instance, frozen from the dense
# eigensolver cross-check and reproduced by the derivative-free search.
REF_PARAMS = SmhkParams(3, 2, 2, 3)
REF_THETA = 0.3298549896613478
REF_SLEM = 0.9460893231708193
REF_W0 = 0.1846150963762503
REF_W1 = 0.2291650855356302


def test_core_weight_value_at_s_one():
    # n = 2, k = 2, s = 1 collapses to 1 / (2 + sqrt(2))
    value = core_weight(SmhkParams(2, 2, 1, 1), 1.0)
    assert value == pytest.approx(1.0 / (2.0 + math.sqrt(2.0)), abs=1e-15)
    assert value == pytest.approx(0.2928932, abs=1e-7)


@pytest.mark.parametrize("n", [2, 3, 5])
@pytest.mark.parametrize("s", [0.2, 0.75, 0.95])
def test_core_weight_scales_inversely_with_k(n, s):
    w2 = core_weight(SmhkParams(n, 2, 1, 1), s)
    w4 = core_weight(SmhkParams(n, 4, 1, 1), s)
    assert w4 == pytest.approx(w2 / 2.0, rel=1e-14)


@pytest.mark.parametrize("n,L", [(2, 1), (3, 3), (5, 2)])
def test_bridge_weight_vanishes_with_sin_m_theta(n, L):
    # theta = pi / m zeroes the numerator while the denominator stays away
    # from zero for m = 2; float pi leaves sin(m*theta) at rounding noise
    params = SmhkParams(n, 2, 2, L)
    assert bridge_weight(params, math.pi / 2.0) == pytest.approx(0.0, abs=1e-13)


@pytest.mark.parametrize("theta", [0.3, 0.9, 1.7, 2.5])
def test_bridge_weight_m1_reduction(theta):
    # for m = 1 the sin((m-1) theta) term drops out of the denominator
    params = SmhkParams(3, 2, 1, 4)
    rp = math.sqrt(3) + math.sqrt(2)
    rm = math.sqrt(3) - math.sqrt(2)
    expected = (rp - math.cos(theta) * rm) / ((params.L + 1) * rp)
    assert bridge_weight(params, theta) == pytest.approx(expected, rel=1e-14)


def test_bridge_weight_singular_denominator_raises():
    params = SmhkParams(2, 2, 1, 1)
    with pytest.raises(SingularEvaluationError):
        bridge_weight(params, math.pi - 1e-15)


@pytest.mark.parametrize("theta", [0.25, 0.8, 1.4])
def test_angle_factor_independent_of_k(theta):
    base = angle_factor(SmhkParams(3, 2, 2, 3), theta)
    for k in (3, 4, 7):
        assert angle_factor(SmhkParams(3, k, 2, 3), theta) == base


@pytest.mark.parametrize("theta", [0.25, 0.8, 1.4])
def test_angle_residual_independent_of_k(theta):
    base = angle_residual(SmhkParams(3, 2, 2, 3), theta)
    for k in (3, 4, 7):
        assert angle_residual(SmhkParams(3, k, 2, 3), theta) == base


@pytest.mark.parametrize("theta", [0.4, 1.1, 2.0])
def test_angle_factor_m1_reduction(theta):
    # m = 1: sin(m theta)/sin(theta) = 1 and the trailing term vanishes
    params = SmhkParams(3, 2, 1, 4)
    w1 = bridge_weight(params, theta)
    root_l = math.sqrt(params.L)
    expected = (1 + params.L) / root_l + (math.cos(theta) - 1.0) / (root_l * w1)
    assert angle_factor(params, theta) == pytest.approx(expected, rel=1e-12)


def test_angle_factor_rejects_singular_theta():
    params = SmhkParams(3, 2, 2, 3)
    with pytest.raises(SingularEvaluationError):
        angle_factor(params, math.pi - 1e-15)


def test_residual_sign_change_brackets_the_root():
    lo = angle_residual(REF_PARAMS, REF_THETA - 0.01)
    hi = angle_residual(REF_PARAMS, REF_THETA + 0.01)
    assert lo * hi < 0.0


def test_solve_theta_reference_instance():
    solution = solve_theta(REF_PARAMS)
    assert solution.theta == pytest.approx(REF_THETA, abs=1e-10)
    assert solution.slem == pytest.approx(REF_SLEM, abs=1e-10)
    assert solution.slem == pytest.approx(math.cos(solution.theta), abs=1e-15)
    assert solution.weights[0] == pytest.approx(REF_W0, abs=1e-10)
    assert solution.weights[1] == pytest.approx(REF_W1, abs=1e-10)
    assert abs(solution.residual) <= 1e-12


@pytest.mark.parametrize(
    "params",
    [
        SmhkParams(2, 2, 1, 1),
        SmhkParams(3, 2, 2, 3),
        SmhkParams(4, 3, 3, 2),
        SmhkParams(2, 4, 2, 2),
        SmhkParams(5, 2, 1, 4),
    ],
    ids=str,
)
def test_solver_contract(params):
    solution = solve_theta(params)
    assert 0.0 < solution.theta < math.pi
    assert 0.0 < solution.slem < 1.0
    assert abs(solution.residual) <= 1e-12
    assert len(solution.weights) == params.m + 1
    spectrum = slem_full(assemble_full(params, solution.weights))
    assert spectrum.slem == pytest.approx(solution.slem, abs=1e-8)
    assert spectrum.perron_simple


def test_interior_weights_exactly_half():
    for m in (2, 3, 5):
        solution = analytical_weights(SmhkParams(3, 2, m, 2))
        assert all(w == 0.5 for w in solution.weights.values[2:])


def test_slem_identical_across_k():
    slems = [solve_theta(SmhkParams(3, k, 2, 2)).slem for k in (2, 3, 4, 5)]
    assert max(slems) - min(slems) <= 1e-10


def test_core_weight_times_k_constant_across_k():
    scaled = [
        solve_theta(SmhkParams(3, k, 2, 2)).weights[0] * k for k in (2, 3, 4, 5)
    ]
    assert max(scaled) - min(scaled) <= 1e-12


def test_slem_decreases_with_set_count():
    slems = [solve_theta(SmhkParams(n, 2, 2, 3)).slem for n in range(2, 7)]
    assert all(a > b for a, b in zip(slems, slems[1:]))


def test_slem_nondecreasing_in_branch_size():
    for L in (1, 2, 3):
        slems = [solve_theta(SmhkParams(3, 2, m, L)).slem for m in (1, 2, 3)]
        assert all(a <= b + 1e-14 for a, b in zip(slems, slems[1:]))
    for m in (1, 2, 3):
        slems = [solve_theta(SmhkParams(3, 2, m, L)).slem for L in (1, 2, 3)]
        assert all(a <= b + 1e-14 for a, b in zip(slems, slems[1:]))


def test_analytical_weights_mirrors_solve_theta():
    direct = solve_theta(REF_PARAMS)
    wrapped = analytical_weights(REF_PARAMS)
    assert wrapped == direct


def test_orbit_weights_reject_non_finite():
    from smhk.weights import OrbitWeights

    with pytest.raises(ValueError):
        OrbitWeights((0.1, math.nan))
    with pytest.raises(ValueError):
        OrbitWeights(())
    weights = OrbitWeights((0.25, 0.5))
    assert np.array_equal(weights.array, np.array([0.25, 0.5]))
    assert weights[1] == 0.5
