import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from numpy.testing import assert_allclose

from goursatbie import chebyshev
from goursatbie.chebyshev import ChebSeries

HALF_PI = np.pi / 2


def test_constant_interpolant():
    s = chebyshev.interpolate(lambda t: np.ones_like(t), 8, 0.0, HALF_PI)
    assert_allclose(s.coeffs, [1, 0, 0, 0, 0, 0, 0, 0], atol=1e-15)


def test_reproduces_basis_polynomial():
    T3 = lambda t: np.polynomial.chebyshev.chebval((4 * t / np.pi) - 1, [0, 0, 0, 1])
    s = chebyshev.interpolate(T3, 8, 0.0, HALF_PI)
    expected = np.zeros(8)
    expected[3] = 1.0
    assert_allclose(s.coeffs, expected, atol=1e-14)


def test_interpolation_hits_samples():
    nodes = chebyshev.chebyshev_nodes(20, 0.0, HALF_PI)
    s = chebyshev.interpolate(np.exp, 20, 0.0, HALF_PI)
    assert_allclose(chebyshev.eval(s, nodes), np.exp(nodes), rtol=1e-13)


def test_ellipse_radius_coefficients_decay():
    m = 0.5
    r = lambda t: (1 - m) / np.sqrt(1 - (2 * np.sqrt(m) / (1 + m) * np.cos(t)) ** 2)
    s = chebyshev.interpolate(r, 64, 0.0, HALF_PI)
    assert np.max(np.abs(s.coeffs[-8:])) < 1e-13


def test_evaluation_examples():
    assert_allclose(chebyshev.eval(ChebSeries([2.0], (0.0, HALF_PI)), 0.9), 2.0)
    assert_allclose(chebyshev.eval(ChebSeries([0.0, 1.0]), 0.3), 0.3)
    s = chebyshev.interpolate(np.sin, 24, 0.0, HALF_PI)
    assert_allclose(s(1.0), np.sin(1.0), atol=1e-13)


def test_clenshaw_matches_numpy():
    rng = np.random.default_rng(3)
    c = rng.standard_normal(15)
    x = np.linspace(-1, 1, 33)
    assert_allclose(chebyshev.clenshaw(c, x), np.polynomial.chebyshev.chebval(x, c), atol=1e-13)


def test_derivatives():
    zero = chebyshev.derivative(ChebSeries([3.0], (0.0, HALF_PI)))
    assert np.all(zero.coeffs == 0)
    one = chebyshev.derivative(ChebSeries([0.0, 1.0]))
    assert_allclose(one(np.array([-0.5, 0.2])), [1.0, 1.0])
    s = chebyshev.interpolate(np.sin, 24, 0.0, HALF_PI)
    assert_allclose(s.deriv(2)(0.7), -np.sin(0.7), atol=1e-10)


def test_interval_scaling_of_derivative():
    s = ChebSeries([0.0, 1.0], (0.0, HALF_PI))
    assert_allclose(s.deriv()(0.4), 4 / np.pi)


def test_matrices_agree_with_series():
    rng = np.random.default_rng(0)
    c = rng.standard_normal(10)
    theta = np.linspace(0, HALF_PI, 7)
    s = ChebSeries(c, (0.0, HALF_PI))
    B = chebyshev.basis_matrix(10, theta, 0.0, HALF_PI)
    D = chebyshev.derivative_matrix(10, 0.0, HALF_PI)
    assert_allclose(B @ c, s(theta), atol=1e-13)
    assert_allclose(B @ (D @ c), s.deriv()(theta), atol=1e-12)


@settings(max_examples=30, deadline=None)
@given(st.lists(st.floats(-5, 5), min_size=1, max_size=12), st.floats(0, 1))
def test_derivative_matches_numpy(coeffs, u):
    s = ChebSeries(coeffs, (0.0, HALF_PI))
    theta = u * HALF_PI
    ref = np.polynomial.chebyshev.chebval(4 * theta / np.pi - 1, np.polynomial.chebyshev.chebder(coeffs)) * 4 / np.pi
    assert_allclose(s.deriv()(theta), ref, atol=1e-10 * (1 + np.abs(ref)))


def test_out_of_interval_rejected():
    s = ChebSeries([1.0, 2.0], (0.0, HALF_PI))
    with pytest.raises(ValueError):
        s(2.0)
