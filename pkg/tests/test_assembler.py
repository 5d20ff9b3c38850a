import numpy as np
import pytest
from numpy.testing import assert_allclose

from goursatbie import chebyshev
from goursatbie.assembler import SolverConfig, assemble, collocation_points, corner_terms, solve
from goursatbie.errors import ConfigError
from goursatbie.goursat import eval_phi
from goursatbie.oracles import circle_phi
from goursatbie.shapes import circle, ellipse, overlapping_circles

from conftest import solved

HALF_PI = np.pi / 2


def test_collocation_points():
    assert_allclose(collocation_points(2).theta, [np.pi / 4])
    assert_allclose(collocation_points(3).theta, np.pi * (np.array([-1, 1]) / np.sqrt(3) + 1) / 4)
    t = collocation_points(64).theta
    assert np.all((t > 0) & (t < HALF_PI)) and len(t) == 63


def test_config_validation():
    with pytest.raises(ConfigError):
        SolverConfig(N=4)
    with pytest.raises(ConfigError):
        SolverConfig(quad_eps=1e-3)
    with pytest.raises(ConfigError):
        SolverConfig(corner_terms=0)
    with pytest.raises(ConfigError):
        corner_terms(circle(), SolverConfig(N=16, use_corner=True))


def test_corner_term_selection():
    lens = overlapping_circles(2 * np.pi / 3)
    auto = corner_terms(lens, SolverConfig(N=16))
    assert len(auto) == 2
    assert_allclose(auto[0], 0.6157310595, atol=1e-9)
    assert_allclose(auto[1], 1.8335 + 0.2523j, atol=1e-4)
    assert corner_terms(lens, SolverConfig(N=16, corner_terms=1)) == auto[:1]
    assert corner_terms(lens, SolverConfig(N=16, use_corner=False)) is None
    assert corner_terms(lens, SolverConfig(N=16, corner_exponent=0.5)) == (0.5,)


def test_system_shape_and_labels():
    s = assemble(circle(), SolverConfig(N=8))
    assert s.shape == (30, 16)
    assert s.row_labels[-2:] == [("end", "re_phi_half_pi"), ("end", "im_phi_zero")]


def exact_circle_coefficients(N):
    a = chebyshev.interpolate(lambda t: circle_phi(t).real, N, 0.0, HALF_PI).coeffs
    b = chebyshev.interpolate(lambda t: circle_phi(t).imag, N, 0.0, HALF_PI).coeffs
    return np.concatenate([a, b])


def test_exact_solution_nearly_satisfies_rows():
    # At N=8 the interpolated coefficients carry ~1e-8 truncation error which
    # the derivative rows amplify; by N=12 the rows vanish to roundoff.
    s8 = assemble(circle(), SolverConfig(N=8))
    assert np.max(np.abs(s8.A @ exact_circle_coefficients(8) - s8.rhs)) < 1e-6
    s12 = assemble(circle(), SolverConfig(N=12))
    assert np.max(np.abs(s12.A @ exact_circle_coefficients(12) - s12.rhs)) < 1e-8


def test_columns_depend_only_on_their_basis_function():
    lens = overlapping_circles(2 * np.pi / 3)
    full = assemble(lens, SolverConfig(N=16)).A
    single = assemble(lens, SolverConfig(N=16, corner_terms=1)).A
    plain = assemble(lens, SolverConfig(N=16, use_corner=False)).A
    for k in (15, 31):  # a_{N-1} and b_{N-1} hold the dominant corner term
        assert_allclose(full[:, k], single[:, k], atol=1e-12)
        assert np.max(np.abs(full[:, k] - plain[:, k])) > 1e-2
    assert_allclose(full[:, :13], plain[:, :13], atol=1e-10)


def test_circle_solution(circle32):
    _, g = circle32
    assert_allclose(eval_phi(g, 0.0), 0.5, atol=1e-9)
    assert np.max(np.abs(g.a[16:])) < 1e-12 and np.max(np.abs(g.b[16:])) < 1e-12
    d = g.diagnostics
    assert d["rows"] == 126 and d["columns"] == 64
    assert d["residual_norm"] < 1e-12


@pytest.mark.parametrize("chi", [1.0, 0.3, -0.5])
def test_circle_biaxial(chi):
    _, g = solved("circle", 24, chi=chi)
    t = np.linspace(0, HALF_PI, 11)
    assert_allclose(eval_phi(g, t), circle_phi(t, chi), atol=1e-12)


def test_ellipse_biaxial_stays_accurate():
    from goursatbie.oracles import ellipse_phi

    _, g = solved("ellipse", 32, chi=0.4, param=0.3)
    t = np.linspace(0, HALF_PI, 11)
    assert_allclose(eval_phi(g, t), ellipse_phi(t, 0.3, 0.4), atol=1e-9)


def test_lens_coefficients_decay(lens32):
    _, g = solved("overlap", 64, param=np.pi / 3)
    n = 62  # two corner slots hold the complex pair
    assert np.max(np.abs(g.a[n - 10 : n])) < 1e-10
    assert np.max(np.abs(g.b[n - 10 : n])) < 1e-10
