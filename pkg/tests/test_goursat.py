import numpy as np
import pytest
from numpy.testing import assert_allclose

from goursatbie import chebyshev
from goursatbie.errors import DomainError, InvalidArgumentError, InvalidDataError, SingularEvaluationError
from goursatbie.goursat import (
    AugmentedGoursat,
    basis,
    corner_slots,
    eval_d2phi,
    eval_dphi,
    eval_phi,
    extend,
    extend_dphi,
    real_basis,
)
from goursatbie.oracles import ellipse_phi

HALF_PI = np.pi / 2


def unit(N, k, corner=()):
    a = np.zeros(N)
    a[k] = 1.0
    return AugmentedGoursat(a, np.zeros(N), corner)


def test_zero_and_constant():
    g = AugmentedGoursat(np.zeros(8), np.zeros(8))
    assert_allclose(eval_phi(g, np.linspace(0, HALF_PI, 5)), 0.0)
    assert_allclose(eval_phi(unit(8, 0), np.linspace(0, HALF_PI, 5)), 1.0)


def test_corner_slot_values():
    g = unit(8, 7, corner=0.5)
    assert_allclose(eval_phi(g, HALF_PI), 0.0)
    assert_allclose(eval_phi(g, HALF_PI - 0.01), 0.1, rtol=1e-12)
    assert_allclose(eval_dphi(g, HALF_PI - 0.01), -5.0, rtol=1e-10)
    with pytest.raises(SingularEvaluationError):
        eval_dphi(g, HALF_PI)


def test_linear_term_derivative():
    g = unit(8, 1)
    assert_allclose(eval_dphi(g, np.array([0.1, 0.9, 1.4])), 4 / np.pi)
    assert_allclose(eval_d2phi(g, 0.5), 0.0, atol=1e-14)


def test_complex_corner_pair_takes_two_slots():
    x = 1.2 + 0.4j
    assert corner_slots((0.6, x)) == 3
    N = 10
    t = np.array([0.3, 1.1, 1.5])
    eps = HALF_PI - t
    X, dX, _ = real_basis(N, t, (0.6, x))
    w = eps**x
    # Dominant term last: 0.6 in slot 9, the pair in slots 7 and 8.
    assert_allclose(X[:, 9], eps**0.6)
    assert_allclose(X[:, 7], w.real)
    assert_allclose(X[:, 8], w.imag)
    assert_allclose(dX[:, 7] + 1j * dX[:, 8], -x * eps ** (x - 1))


def test_basis_is_real_then_imaginary():
    B, dB, d2B = basis(8, [0.2, 0.4])
    assert np.all(B[:, :8].imag == 0) and np.all(B[:, 8:].real == 0)
    assert_allclose(B[:, 8:].imag, B[:, :8].real)


def test_ellipse_fit_derivatives_match_differences():
    m = 0.5
    a = chebyshev.interpolate(lambda t: ellipse_phi(t, m).real, 40, 0.0, HALF_PI).coeffs
    b = chebyshev.interpolate(lambda t: ellipse_phi(t, m).imag, 40, 0.0, HALF_PI).coeffs
    g = AugmentedGoursat(a, b)
    h = 1e-6
    fd = (eval_phi(g, 0.5 + h) - eval_phi(g, 0.5 - h)) / (2 * h)
    assert_allclose(eval_dphi(g, 0.5), fd, atol=1e-6)
    fd2 = (eval_dphi(g, 0.5 + h) - eval_dphi(g, 0.5 - h)) / (2 * h)
    assert_allclose(eval_d2phi(g, 0.5), fd2, atol=1e-6)


def test_extension_maps():
    rng = np.random.default_rng(1)
    g = AugmentedGoursat(rng.standard_normal(10), rng.standard_normal(10), corner=0.7)
    t0 = 0.4
    p = eval_phi(g, t0)
    assert_allclose(extend(g, np.pi - t0), -np.conj(p))
    assert_allclose(extend(g, np.pi + t0), -p)
    assert_allclose(extend(g, 2 * np.pi - t0), np.conj(p))
    d = eval_dphi(g, t0)
    assert_allclose(extend_dphi(g, np.pi - t0), np.conj(d))
    assert_allclose(extend_dphi(g, 2 * np.pi - t0), -np.conj(d))
    with pytest.raises(DomainError):
        extend(g, -0.1)


def test_extension_continuity_with_end_conditions(circle32):
    _, g = circle32
    assert abs(eval_phi(g, HALF_PI).real) < 1e-12
    assert abs(eval_phi(g, 0.0).imag) < 1e-12
    d = 1e-9
    assert_allclose(extend(g, HALF_PI - d), extend(g, HALF_PI + d), atol=1e-8)
    assert_allclose(extend(g, 2 * np.pi), extend(g, 0.0), atol=1e-12)


def test_json_roundtrip():
    rng = np.random.default_rng(2)
    g = AugmentedGoursat(rng.standard_normal(12), rng.standard_normal(12), corner=(0.6, 1.8 + 0.25j))
    back = AugmentedGoursat.from_json(g.to_json())
    assert back.corner == g.corner
    assert_allclose(back.coefficients, g.coefficients, rtol=0, atol=0)
    assert_allclose(g.lam, 1.6)
    legacy = AugmentedGoursat.from_dict({"N": 3, "lambda": 1.5, "a": [1, 2, 3], "b": [0, 0, 0]})
    assert legacy.corner == (0.5,)


def test_invalid_inputs():
    with pytest.raises(InvalidDataError):
        AugmentedGoursat(np.zeros(4), np.zeros(5))
    with pytest.raises(InvalidArgumentError):
        AugmentedGoursat(np.zeros(3), np.zeros(3), corner=(0.5, 1 + 1j))
    with pytest.raises(InvalidArgumentError):
        AugmentedGoursat(np.zeros(8), np.zeros(8), corner=-0.3)
    with pytest.raises(InvalidDataError):
        AugmentedGoursat.from_dict({"N": 5, "a": [1, 2], "b": [1, 2]})
    with pytest.raises(DomainError):
        eval_phi(unit(8, 0), 1.7)
