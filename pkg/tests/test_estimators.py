import math

import numpy as np
import pytest

from src.core import (
    CircuitConfig,
    CircuitFamily,
    DegenerateConditionError,
    InsufficientShotsError,
    Observable,
    OutcomeCounts,
)
from src.operators.circuits import observable_values
from src.operators.estimators import (
    estimate_conditional_X,
    estimate_D,
    estimate_observable,
    estimate_X,
    estimates_for_family,
)
from src.operators.noise import sample


def test_contrast_estimate_and_error():
    estimate = estimate_X(OutcomeCounts((300, 200, 400, 100), 1000))
    assert estimate.value == pytest.approx(0.0)
    assert estimate.std_error == pytest.approx(math.sqrt(1000 / 999 / 1000))


def test_perfect_contrast_has_zero_error():
    estimate = estimate_X(OutcomeCounts((8192, 0, 0, 0), 8192))
    assert estimate.value == 1.0
    assert estimate.std_error == 0.0


def test_single_shot_cannot_give_a_variance():
    with pytest.raises(InsufficientShotsError):
        estimate_X(OutcomeCounts((1, 0, 0, 0), 1))


def test_distinguishability_estimate():
    estimate = estimate_D(OutcomeCounts((450, 50, 100, 400), 1000))
    assert estimate.value == pytest.approx(0.9 + 0.8 - 1.0)
    assert estimate.std_error > 0


def test_conditional_contrast_estimate():
    counts = OutcomeCounts((300, 100, 100, 500), 1000)
    x0 = estimate_conditional_X(counts, 0)
    x1 = estimate_conditional_X(counts, 1)
    assert x0.observable is Observable.X0
    assert x0.value == pytest.approx(0.5)
    assert x1.value == pytest.approx(-2 / 3)
    assert x0.std_error == pytest.approx(math.sqrt(4 * 0.3 * 0.1 / (1000 * 0.4**3)))


def test_empty_conditioning_event_raises():
    with pytest.raises(DegenerateConditionError):
        estimate_conditional_X(OutcomeCounts((500, 0, 500, 0), 1000), 1)
    with pytest.raises(DegenerateConditionError):
        estimate_D(OutcomeCounts((0, 0, 600, 400), 1000))


def test_family_observables():
    counts = OutcomeCounts((300, 200, 200, 300), 1000, phi=0.2, alpha=0.3)
    eraser = estimates_for_family(counts, CircuitFamily.ERASER_X)
    assert [e.observable for e in eraser] == [Observable.X, Observable.X0, Observable.X1]
    assert all(e.phi == 0.2 and e.alpha == 0.3 for e in eraser)
    assert [e.observable for e in estimates_for_family(counts, CircuitFamily.ERASER_Z)] == [Observable.DM]
    single = OutcomeCounts((700, 0, 300, 0), 1000)
    assert estimates_for_family(single, CircuitFamily.MZI_1Q)[0].value == pytest.approx(0.4)


@pytest.mark.parametrize(
    "family, observable, phi, alpha",
    [
        (CircuitFamily.WP_X, Observable.X, 0.9, 1.7),
        (CircuitFamily.WP_Z, Observable.D, 0.0, 1.1),
        (CircuitFamily.ERASER_X, Observable.X0, 1.2, 2.5),
        (CircuitFamily.ERASER_X, Observable.X1, 1.2, 2.5),
        (CircuitFamily.ERASER_Z, Observable.DM, 0.3, 2.0),
    ],
)
def test_standard_errors_match_repeated_experiments(family, observable, phi, alpha):
    config = CircuitConfig(family, phi, alpha)
    shots = 8192
    repeats = [estimate_observable(sample(config, shots, seed=seed), observable) for seed in range(400)]
    values = np.array([e.value for e in repeats])
    predicted = np.mean([e.std_error for e in repeats])
    assert values.std(ddof=1) == pytest.approx(predicted, rel=0.1)
    truth = observable_values(observable, phi, alpha)[0]
    assert abs(values.mean() - truth) < 4 * predicted / math.sqrt(len(values))


def test_contrast_is_the_detector_weighted_mean_of_conditional_contrasts():
    for seed in range(20):
        counts = sample(CircuitConfig(CircuitFamily.ERASER_X, 0.3 * seed, 0.7), 1000, seed=seed)
        freqs = counts.frequencies()
        p0, p1 = freqs[0] + freqs[2], freqs[1] + freqs[3]
        mixed = p0 * estimate_conditional_X(counts, 0).value + p1 * estimate_conditional_X(counts, 1).value
        assert mixed == pytest.approx(estimate_X(counts).value, abs=1e-14)


def test_estimates_converge_with_shots():
    phi = np.linspace(0.1, 2 * math.pi - 0.1, 50)
    truth = observable_values(Observable.X0, phi, 1.3)
    mean_errors = []
    for shots in (2**10, 2**14, 2**18):
        estimates = [
            estimate_observable(sample(CircuitConfig(CircuitFamily.ERASER_X, p, 1.3), shots, seed=j), Observable.X0)
            for j, p in enumerate(phi)
        ]
        errors = np.abs([e.value for e in estimates] - truth)
        mean_errors.append(errors.mean())
    assert mean_errors[0] > mean_errors[1] > mean_errors[2]
    assert np.all(errors < 5 * np.array([e.std_error for e in estimates]))
