import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fraclindblad import mlf
from fraclindblad.mlf import (
    MittagLefflerAccuracyError,
    MittagLefflerDomainError,
    MlParams,
    ml_one,
    ml_two,
)

import oracles


@pytest.mark.parametrize(
    "alpha, z, expected, tol",
    [
        (1.0, -1.0, 0.3678794411714423, 1e-15),
        (0.7, 0.0, 1.0, 0.0),
        (0.5, -1.0, 0.4275835761558070, 1e-15),
    ],
)
def test_ml_one_examples(alpha, z, expected, tol):
    assert abs(ml_one(alpha, z) - expected) <= tol


def test_ml_one_tail_example():
    leading = 1.0 / (1e4 * math.gamma(0.5))
    assert leading == pytest.approx(5.6419e-5, rel=1e-4)
    assert ml_one(0.5, -1e4) == pytest.approx(leading, rel=1e-2)


@pytest.mark.parametrize(
    "alpha, beta, z, expected",
    [
        (1.0, 2.0, -1.0, 0.6321205588285577),
        (0.5, 1.0, -1.0, 0.4275835761558070),
        # 1/Gamma(0.9), verified with mpmath at 30 digits
        (0.9, 0.9, 0.0, 0.9357787209128728),
    ],
)
def test_ml_two_examples(alpha, beta, z, expected):
    assert abs(ml_two(alpha, beta, z) - expected) <= 1e-15


def test_inverse_gamma_example_against_mpmath():
    import mpmath as mp

    with mp.workdps(30):
        assert abs(ml_two(0.9, 0.9, 0.0) - float(mp.rgamma(mp.mpf(0.9)))) <= 2.3e-16


@pytest.mark.parametrize("alpha", [0.0, -0.1, 1.0000001, 1.5, float("nan")])
def test_alpha_domain(alpha):
    with pytest.raises(MittagLefflerDomainError):
        ml_one(alpha, -1.0)


@pytest.mark.parametrize("beta", [0.0, -1.0, float("inf"), float("nan")])
def test_beta_domain(beta):
    with pytest.raises(MittagLefflerDomainError):
        ml_two(0.5, beta, -1.0)


def test_non_finite_argument():
    with pytest.raises(MittagLefflerDomainError):
        ml_one(0.5, float("nan"))


def test_unreachable_positive_argument():
    # E_0.3(1e4) ~ exp(1e4^(1/0.3)); far outside the validated range
    with pytest.raises(MittagLefflerAccuracyError):
        ml_one(0.3, 1e4)


def test_regime_constants_pinned():
    assert mlf.SERIES_RADIUS == 1.0
    assert mlf.ASYMPTOTIC_THRESHOLD == 50.0
    assert mlf.ASYMPTOTIC_TOL == 1e-17
    assert mlf.VALIDATED_RANGE == (-1e6, 1.0)


def test_same_code_path_for_beta_one():
    zs = np.linspace(-100, 1, 57)
    for a in (0.3, 0.55, 0.9, 1.0):
        assert np.array_equal(ml_one(a, zs), ml_two(a, 1.0, zs))


def test_array_shape_preserved():
    z = np.linspace(-5, 0, 12).reshape(3, 4)
    out = ml_one(0.6, z)
    assert out.shape == (3, 4)
    assert out[0, 0] == ml_one(0.6, z[0, 0])


def test_params_object():
    p = MlParams(0.5)
    assert p(-1.0) == ml_one(0.5, -1.0)
    with pytest.raises(MittagLefflerDomainError):
        MlParams(1.2)
    with pytest.raises(MittagLefflerDomainError):
        MlParams(0.5, beta=0.0)


def test_reduction_to_exponential():
    zs = np.linspace(-50.0, 1.0, 1001)
    assert np.max(np.abs(ml_one(1.0, zs) - np.exp(zs))) <= 1e-12


@given(st.floats(min_value=1e-3, max_value=1.0))
def test_normalization(alpha):
    assert ml_one(alpha, 0.0) == 1.0


@pytest.mark.parametrize("alpha", [0.3, 0.5, 0.7, 0.9])
def test_complete_monotonicity_sampled(alpha):
    x = np.concatenate([[0.0], np.geomspace(1e-3, 1e4, 400)])
    v = ml_one(alpha, -x)
    assert v[0] == 1.0
    assert np.all(v > 0)
    assert np.all(np.diff(v) < 0)


@pytest.mark.parametrize("alpha", [0.3, 0.5, 0.8, 0.95, 1.0])
@pytest.mark.parametrize("beta", [0.4, 1.0, 1.7, 2.0, 3.1])
@pytest.mark.parametrize("z", [-0.3, -0.99, -1.01, -4.0, -25.0, -49.0, -51.0, -400.0, 0.5])
def test_recurrence(alpha, beta, z):
    lhs = ml_two(alpha, beta, z) - z * ml_two(alpha, alpha + beta, z)
    assert abs(lhs - 1.0 / math.gamma(beta)) <= 1e-10


def test_oracle_equivalence_frozen(ml_oracle_rows):
    worst = 0.0
    for a, b, z, ref in ml_oracle_rows:
        worst = max(worst, abs(ml_two(a, b, z) - ref))
    assert worst <= 1e-12


@pytest.mark.parametrize(
    "alpha, z",
    [
        # straddling the series radius and the asymptotic threshold
        (0.3, -1.0),
        (0.3, -1.0000001),
        (0.7, -49.999),
        (0.7, -50.0),
        (0.95, -50.0),
        (0.99, -60.0),
        (0.62, -13.3),
        (0.5, -2.5e5),
    ],
)
def test_regime_boundaries_live_oracle(alpha, z):
    ref = oracles.ml_reference(alpha, 1.0, z)
    assert abs(ml_one(alpha, z) - float(ref)) <= 1e-12


def test_small_positive_arguments():
    for a in (0.4, 0.8):
        for z in (0.1, 0.5, 1.0):
            ref = float(oracles.ml_series(a, 1.0, z))
            assert ml_one(a, z) == pytest.approx(ref, rel=1e-14)


@settings(max_examples=60, deadline=None)
@given(
    alpha=st.floats(min_value=0.2, max_value=1.0),
    x1=st.floats(min_value=0.0, max_value=500.0),
    dx=st.floats(min_value=1e-3, max_value=500.0),
)
def test_bounded_and_decreasing(alpha, x1, dx):
    e1 = ml_one(alpha, -x1)
    e2 = ml_one(alpha, -(x1 + dx))
    assert 0.0 <= e2 <= e1 <= 1.0
