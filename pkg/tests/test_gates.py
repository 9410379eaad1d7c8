import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.linalg import expm

from src.core import BcnotVariant, BiasParams
from src.operators.gates import (
    bcnot,
    bcnot5_closed_form,
    cnot,
    effective_hamiltonian,
    gamma_c,
    m_local,
    optimal_readout,
    u1,
    u2,
    u_eff,
    u_zx,
)
from src.operators.linalg import HADAMARD, S_DAG, rx, tensor, unitarity_deviation

ratios = st.floats(min_value=-0.5, max_value=0.5, allow_nan=False)
bias_params = st.builds(BiasParams, ratios, ratios, ratios, ratios, ratios)


def test_u2_zero_pi_is_hadamard():
    assert np.allclose(u2(0.0, math.pi), HADAMARD, atol=1e-15)


def test_u1_is_a_phase():
    assert np.allclose(u1(math.pi / 2), [[1, 0], [0, 1j]])


def test_cnot_from_cross_resonance_and_local_correction():
    assert np.allclose(u_zx(math.pi / 2) @ m_local(), cnot(), atol=1e-15)


def test_zero_bias_entangler_is_the_zx_rotation():
    assert np.allclose(u_eff(BiasParams()), u_zx(math.pi / 2), atol=1e-15)


def test_zero_bias_bcnot_is_exact_cnot():
    for variant in BcnotVariant:
        assert np.max(np.abs(bcnot(BiasParams(), variant) - cnot())) < 1e-12


def test_zero_bias_closed_form_is_cnot():
    assert np.max(np.abs(bcnot5_closed_form(BiasParams()) - cnot())) < 1e-12


def test_gamma_c_reduces_to_one_without_bias():
    assert gamma_c(BiasParams()) == pytest.approx((1.0, 1.0))


def test_optimal_readout_separates_detector_states():
    alpha = 1.3
    delta_0 = np.array([1.0, 1.0]) / math.sqrt(2)
    delta_1 = np.array([1.0, np.exp(1j * alpha)]) / math.sqrt(2)
    readout = optimal_readout(alpha)
    p_correct = 0.5 * abs((readout @ delta_0)[0]) ** 2 + 0.5 * abs((readout @ delta_1)[1]) ** 2
    assert p_correct == pytest.approx((1 + math.sin(alpha / 2)) / 2)


@settings(max_examples=500, deadline=None)
@given(bias=bias_params)
def test_closed_form_entangler_matches_matrix_exponential(bias):
    assert np.max(np.abs(u_eff(bias) - expm(-1j * effective_hamiltonian(bias)))) < 1e-10


@settings(max_examples=500, deadline=None)
@given(bias=bias_params)
def test_bcnot5_formula_matches_construction(bias):
    oracle = expm(-1j * effective_hamiltonian(bias)) @ m_local()
    assert np.max(np.abs(bcnot5_closed_form(bias) - oracle)) < 1e-10
    assert unitarity_deviation(bcnot(bias)) < 1e-11


@settings(max_examples=200, deadline=None)
@given(bias=bias_params)
def test_primed_variant_equals_plain_under_parameter_mapping(bias):
    assert np.max(np.abs(bcnot(bias, BcnotVariant.PRIMED) - bcnot(bias.primed_mapping()))) < 1e-12


@settings(max_examples=200, deadline=None)
@given(bias=bias_params)
def test_double_and_triple_primed_orderings(bias):
    phase, x_rotation = tensor(S_DAG, np.eye(2)), tensor(np.eye(2), rx(-math.pi / 2))
    entangler = u_eff(bias)
    assert np.allclose(bcnot(bias, BcnotVariant.DOUBLE_PRIMED), phase @ entangler @ x_rotation, atol=1e-12)
    assert np.allclose(bcnot(bias, BcnotVariant.TRIPLE_PRIMED), x_rotation @ entangler @ phase, atol=1e-12)


def test_order2_drops_crosstalk_terms():
    bias = BiasParams(0.1, -0.2, 0.3, 0.05, -0.04)
    assert np.allclose(bcnot(bias, order2=True), bcnot(BiasParams(0.1, -0.2)))


def test_entangler_is_block_diagonal_in_control():
    matrix = u_eff(BiasParams(0.2, -0.1, 0.3, 0.1, -0.3))
    assert np.allclose(matrix[:2, 2:], 0.0)
    assert np.allclose(matrix[2:, :2], 0.0)


@settings(max_examples=200, deadline=None)
@given(bias=bias_params)
def test_double_primed_is_plain_and_triple_primed_is_plain_under_mapping(bias):
    assert np.max(np.abs(bcnot(bias, BcnotVariant.DOUBLE_PRIMED) - bcnot(bias))) < 1e-12
    assert np.max(np.abs(bcnot(bias, BcnotVariant.TRIPLE_PRIMED) - bcnot(bias.primed_mapping()))) < 1e-12


@given(bias=bias_params)
def test_mapping_keeps_local_and_crosstalk_biases_apart(bias):
    local, crosstalk = BiasParams(bias.beta1, bias.beta2), BiasParams(0.0, 0.0, *bias.as_array()[2:])
    assert np.all(local.primed_mapping().as_array()[2:] == 0.0)
    assert np.all(crosstalk.primed_mapping().as_array()[:2] == 0.0)
    assert bias.primed_mapping().order2() == bias.order2().primed_mapping()


@pytest.mark.parametrize(
    "bias",
    [
        BiasParams(beta3=-1.0),
        BiasParams(beta1=0.3, beta2=-0.2, beta3=-1.0, beta4=-0.3, beta5=0.2),
        BiasParams(beta1=0.3, beta2=-0.2, beta3=1.0, beta4=0.3, beta5=-0.2),
    ],
)
def test_entangler_is_finite_where_a_rotation_axis_vanishes(bias):
    assert min(gamma_c(bias)) == pytest.approx(0.0, abs=1e-15)
    oracle = expm(-1j * effective_hamiltonian(bias))
    assert np.all(np.isfinite(u_eff(bias)))
    assert np.max(np.abs(u_eff(bias) - oracle)) < 1e-12
    assert np.max(np.abs(bcnot5_closed_form(bias) - oracle @ m_local())) < 1e-12
