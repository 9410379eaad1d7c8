import math

import numpy as np
import pytest

from src.core import (
    BiasParams,
    CircuitConfig,
    CircuitFamily,
    DegenerateConditionError,
    Observable,
    SqgeParams,
    WrongFamilyError,
)
from src.operators.circuits import (
    conditional_X,
    distinguishability,
    exact_probabilities,
    expectation_X,
    first_order_closed_form,
    observable_values,
    reference_probabilities,
    simulate_probabilities,
    sinusoid_visibility,
    sqge_closed_form,
    trace_distance_D,
    values_from_probabilities,
    visibility,
    visibility_scan,
)
from src.operators.gates import bcnot, u1, u2

TWO_QUBIT = [f for f in CircuitFamily if f.is_two_qubit]


@pytest.mark.parametrize("family", list(CircuitFamily))
def test_physical_circuit_matches_textbook_circuit(family, full_grid):
    phi, alpha = full_grid
    assert np.max(np.abs(simulate_probabilities(family, phi, alpha) - reference_probabilities(family, phi, alpha))) < 1e-12


def test_ideal_observables_match_closed_forms(full_grid):
    phi, alpha = full_grid
    expected = {
        Observable.X: (np.cos(phi) + np.cos(phi + alpha)) / 2,
        Observable.X0: np.cos(phi),
        Observable.X1: np.cos(phi + alpha),
        Observable.D: np.sin(alpha / 2),
        Observable.DM: np.zeros_like(phi),
    }
    for observable, values in expected.items():
        assert np.max(np.abs(observable_values(observable, phi, alpha) - values)) < 1e-10, observable


def test_single_qubit_interferometer():
    phi = np.linspace(0, 2 * math.pi, 401)
    assert np.allclose(observable_values(Observable.X_SINGLE, phi), np.cos(phi), atol=1e-12)
    probs = exact_probabilities(CircuitConfig(CircuitFamily.MZI_1Q, 0.3))
    assert probs.shape == (2,)
    assert probs.sum() == pytest.approx(1.0)


@pytest.mark.parametrize("family", TWO_QUBIT)
def test_distributions_are_normalized_under_bias(family, random_bias, random_sqge):
    probs = simulate_probabilities(family, np.linspace(0, 6, 50), 1.1, random_sqge(), random_bias())
    assert np.all(probs >= -1e-15)
    assert np.allclose(probs.sum(axis=1), 1.0, atol=1e-12)


def test_path_statistics_do_not_depend_on_phi(random_bias, random_sqge):
    phi = np.linspace(0, 2 * math.pi, 21)
    bias, sqge = random_bias(), random_sqge()
    for observable in (Observable.D, Observable.DM):
        values = observable_values(observable, phi, 0.9, sqge, bias)
        assert np.ptp(values) < 1e-12


def test_duality_is_saturated_on_ideal_gates():
    phi = np.linspace(0, 2 * math.pi, 101)
    for alpha in np.linspace(0, 2 * math.pi, 51):
        v = visibility_scan(Observable.X, alpha, phi)
        d = distinguishability(CircuitConfig(CircuitFamily.WP_Z, 0.0, alpha))
        assert v**2 + d**2 == pytest.approx(1.0, abs=1e-10)


def test_trace_distance_matches_measured_distinguishability():
    for alpha in np.linspace(0, 2 * math.pi, 13):
        assert distinguishability(CircuitConfig(CircuitFamily.WP_Z, 0.4, alpha)) == pytest.approx(
            trace_distance_D(alpha), abs=1e-12
        )


def test_single_point_operations_check_family():
    with pytest.raises(WrongFamilyError):
        expectation_X(CircuitConfig(CircuitFamily.WP_Z, 0.0))
    with pytest.raises(WrongFamilyError):
        conditional_X(CircuitConfig(CircuitFamily.WP_X, 0.0))
    with pytest.raises(WrongFamilyError):
        distinguishability(CircuitConfig(CircuitFamily.ERASER_X, 0.0))


def test_expectation_and_conditionals_at_a_point():
    config = CircuitConfig(CircuitFamily.ERASER_X, 0.5, 1.2)
    assert expectation_X(config) == pytest.approx((math.cos(0.5) + math.cos(1.7)) / 2)
    x0, x1 = conditional_X(config)
    assert x0 == pytest.approx(math.cos(0.5))
    assert x1 == pytest.approx(math.cos(1.7))


def test_zero_probability_conditioning_raises():
    probs = np.array([[0.5, 0.0, 0.5, 0.0]])
    with pytest.raises(DegenerateConditionError) as info:
        values_from_probabilities(Observable.X1, probs)
    assert info.value.limit is None


def test_visibility_extrema_formula():
    assert visibility(np.array([1.0, -1.0])) == pytest.approx(1.0)
    assert visibility(np.array([0.2, 0.2])) == pytest.approx(0.0)
    assert visibility(np.array([0.5, -0.5])) == pytest.approx(0.5)


def test_sinusoid_visibility_recovers_amplitude():
    phi = np.linspace(0, 2 * math.pi, 37)
    assert sinusoid_visibility(phi, 0.4 * np.cos(phi + 0.3)) == pytest.approx(0.4)


def test_visibility_scan_follows_cos_half_alpha():
    for alpha in (0.0, 1.0, math.pi, 5.0):
        assert visibility_scan(Observable.X, alpha) == pytest.approx(abs(math.cos(alpha / 2)), abs=1e-3)
        assert visibility_scan(Observable.X, alpha, method="sinusoid") == pytest.approx(
            abs(math.cos(alpha / 2)), abs=1e-12
        )


def test_visibility_scan_guards():
    with pytest.raises(ValueError):
        visibility_scan(Observable.X, 0.0, np.linspace(0, 2 * math.pi, 50))
    with pytest.raises(WrongFamilyError):
        visibility_scan(Observable.D, 0.0)
    with pytest.raises(ValueError):
        visibility_scan(Observable.X, 0.0, method="fourier")


def test_eraser_restores_full_visibility():
    for alpha in (0.0, math.pi / 2, math.pi):
        assert visibility_scan(Observable.X0, alpha) == pytest.approx(1.0, abs=1e-12)
        assert visibility_scan(Observable.X1, alpha) == pytest.approx(1.0, abs=1e-12)


def test_sqge_closed_forms_match_simulation(rng):
    axis = np.linspace(0, 2 * math.pi, 21)
    alpha, phi = (a.ravel() for a in np.meshgrid(axis, axis, indexing="ij"))
    worst = 0.0
    for _ in range(200):
        sqge = SqgeParams.from_array(rng.uniform(-math.pi / 10, math.pi / 10, 5))
        for observable in (Observable.X, Observable.X0, Observable.X1, Observable.DM):
            simulated = observable_values(observable, phi, alpha, sqge)
            worst = max(worst, np.max(np.abs(simulated - sqge_closed_form(observable, phi, alpha, sqge))))
        simulated_d = np.abs(observable_values(Observable.D, phi, alpha, sqge))
        worst = max(worst, np.max(np.abs(simulated_d - sqge_closed_form(Observable.D, phi, alpha, sqge))))
    assert worst < 1e-10


def test_single_qubit_sqge_closed_form():
    sqge = SqgeParams(0.05, -0.03)
    phi = np.linspace(0, 2 * math.pi, 41)
    assert np.allclose(
        observable_values(Observable.X_SINGLE, phi, sqge=sqge),
        sqge_closed_form(Observable.X_SINGLE, phi, 0.0, sqge),
        atol=1e-12,
    )


@pytest.mark.parametrize("observable", [Observable.X, Observable.X0, Observable.X1, Observable.D, Observable.DM])
def test_first_order_expansion_error_is_quadratic(observable, demo_bias):
    axis = np.linspace(0.1, 2 * math.pi - 0.1, 15)
    alpha, phi = (a.ravel() for a in np.meshgrid(axis, axis, indexing="ij"))
    direction = demo_bias.as_array() / np.max(np.abs(demo_bias.as_array()))

    def error(scale):
        bias = BiasParams.from_array(scale * direction)
        exact = observable_values(observable, phi, alpha, bias=bias)
        return np.max(np.abs(exact - first_order_closed_form(observable, phi, alpha, bias)))

    scales = np.array([0.02, 0.01, 0.005, 0.0025])
    slope = np.polyfit(np.log(scales), np.log([error(s) for s in scales]), 1)[0]
    assert 1.7 <= slope <= 2.3


def test_biased_entangler_keeps_fringes_at_alpha_pi(demo_bias):
    v = visibility_scan(Observable.X, math.pi, bias=demo_bias, method="sinusoid")
    assert v == pytest.approx(0.21, abs=0.02)


def test_contrast_is_the_mean_of_conditional_contrasts(full_grid):
    phi, alpha = full_grid
    x0, x1 = observable_values(Observable.X0, phi, alpha), observable_values(Observable.X1, phi, alpha)
    assert np.max(np.abs(0.5 * x0 + 0.5 * x1 - observable_values(Observable.X, phi, alpha))) < 1e-12


@pytest.mark.parametrize("observable", [Observable.X, Observable.X0, Observable.X1])
def test_biased_visibility_has_period_four_pi(observable, demo_bias):
    for alpha in np.linspace(0.0, 4 * math.pi, 9):
        v = visibility_scan(observable, alpha, bias=demo_bias, method="sinusoid")
        shifted = visibility_scan(observable, alpha + 4 * math.pi, bias=demo_bias, method="sinusoid")
        assert v == pytest.approx(shifted, abs=1e-10)


def _dense_which_path_probabilities(phi, alpha, bias):
    entangler = bcnot(bias)
    chain = (
        np.kron(u2(0.0, math.pi), u2(0.0, 1.5 * math.pi))
        @ entangler
        @ np.kron(np.eye(2), u1(-alpha / 2))
        @ entangler
        @ np.kron(u2(phi + alpha / 2, math.pi), u2(0.0, math.pi))
    )
    return np.abs(chain[:, 0]) ** 2


def test_biased_which_path_circuit_matches_dense_gate_chain(demo_bias):
    phi = np.linspace(0.0, 2 * math.pi, 41)
    for alpha in (0.0, 1.1, math.pi, 5.0):
        simulated = simulate_probabilities(CircuitFamily.WP_X, phi, alpha, bias=demo_bias)
        dense = np.array([_dense_which_path_probabilities(p, alpha, demo_bias) for p in phi])
        assert np.max(np.abs(simulated - dense)) < 1e-12


def test_vanishing_rotation_axis_gives_finite_probabilities():
    probs = simulate_probabilities(CircuitFamily.WP_X, [0.3, 1.2], 1.0, bias=BiasParams(beta3=-1.0))
    assert np.all(np.isfinite(probs))
    assert np.allclose(probs.sum(axis=1), 1.0)
