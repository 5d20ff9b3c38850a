import json
import logging

import numpy as np
import pytest
from numpy.testing import assert_allclose

from goursatbie.corner import wedge_root_t1
from goursatbie.errors import DomainError
from goursatbie.field import (
    analyticity_residual,
    boundary_field,
    continue_interior,
    field_grid,
    l2_error_phi,
    l2_norm,
    recover_h,
    stress_at,
    traction_residual,
    write_grid,
)
from goursatbie.goursat import AugmentedGoursat
from goursatbie.shapes import circle

HALF_PI = np.pi / 2


def kirsch(z):
    """Stresses around a unit hole under unit tension along x."""
    r, t = np.abs(z), np.angle(z)
    r = np.where(r > 0, r, np.nan)
    c2, c4, s2, s4 = np.cos(2 * t), np.cos(4 * t), np.sin(2 * t), np.sin(4 * t)
    sx = 1 - (1.5 * c2 + c4) / r**2 + 1.5 * c4 / r**4
    sy = -(0.5 * c2 - c4) / r**2 - 1.5 * c4 / r**4
    txy = -(0.5 * s2 + s4) / r**2 + 1.5 * s4 / r**4
    return sx, sy, txy


@pytest.fixture(scope="module")
def circle_field(circle32):
    shape, g = circle32
    return boundary_field(g, shape, 0.0)


def test_h_for_zero_phi():
    g = AugmentedGoursat(np.zeros(8), np.zeros(8))
    t = np.linspace(0, HALF_PI, 7)
    z, _, _ = circle().z(t)
    assert_allclose(recover_h(g, circle(), 1.0, t), -np.conj(z), atol=1e-15)


def test_h_matches_kirsch_potential(circle32):
    shape, g = circle32
    t = np.linspace(0, HALF_PI, 9)
    z, _, _ = shape.z(t)
    assert_allclose(recover_h(g, shape, 0.0, t), -1 / (2 * z) + 1 / (2 * z**3), atol=1e-10)


def test_residuals_on_exact_circle(circle32):
    shape, g = circle32
    t = np.array([0.2, 0.8, 1.3])
    assert np.max(traction_residual(g, shape, 0.0, t)) < 1e-8
    assert np.max(analyticity_residual(g, shape, t)) < 1e-9


def test_continuation_values(circle_field):
    phi, h = continue_interior(circle_field, 2.0)
    assert_allclose(phi, 0.25, atol=1e-12)
    assert_allclose(h, -0.25 + 1 / 16, atol=1e-12)
    assert abs(continue_interior(circle_field, 50.0)[0]) <= 0.011


def test_continuation_near_boundary(circle_field, caplog):
    t = np.array([0.3, 1.0])
    zeta = 1.01 * np.exp(1j * t)
    phi, _ = continue_interior(circle_field, zeta)
    assert_allclose(phi, 1 / (2 * zeta), atol=1e-3)
    assert_allclose(phi, 1 / (2 * zeta), atol=1e-12)
    with caplog.at_level(logging.WARNING):
        continue_interior(circle_field, 1.0005j)
    assert "within" in caplog.text


def test_derivative_cross_check(circle_field):
    h = 1e-5
    fd = (continue_interior(circle_field, 2 + h)[0] - continue_interior(circle_field, 2 - h)[0]) / (2 * h)
    c = circle_field.contour()
    direct = -np.sum(c["phi"] * c["dz"] / (c["z"] - 2.0) ** 2) / (2j * np.pi)
    assert_allclose(fd, direct, atol=1e-6)
    assert_allclose(direct, -0.125, atol=1e-12)


def test_points_in_hole_rejected(circle_field):
    with pytest.raises(DomainError):
        continue_interior(circle_field, 0.3 + 0.2j)
    with pytest.raises(DomainError):
        stress_at(circle_field, 1.0 + 0.0j)


@pytest.mark.parametrize("zeta", [3j, 2.0, 1.5 + 1.5j, -1.2 + 0.4j, 1.02 * np.exp(0.7j)])
def test_circle_stresses_match_kirsch(circle_field, zeta):
    s = stress_at(circle_field, zeta)
    assert_allclose([s.sigma_x, s.sigma_y, s.tau_xy], kirsch(zeta), atol=1e-8)


def test_far_field(circle_field, wedge48):
    s = stress_at(circle_field, 50 + 50j)
    assert_allclose([s.sigma_x, s.sigma_y, s.tau_xy], [1, 0, 0], atol=1e-2)
    shape, g = wedge48
    bf = boundary_field(g, shape, 0.0)
    for zeta in (100.0, 100j, 100 * np.exp(0.6j)):
        s = stress_at(bf, zeta)
        assert_allclose([s.sigma_x, s.sigma_y, s.tau_xy], [1, 0, 0], atol=5e-3)


def test_far_field_biaxial():
    from conftest import solved

    shape, g = solved("ellipse", 24, chi=0.5, param=0.3)
    bf = boundary_field(g, shape, 0.5)
    s = stress_at(bf, 100 * np.exp(0.3j))
    assert_allclose([s.sigma_x, s.sigma_y, s.tau_xy], [1, 0.5, 0], atol=5e-3)


def test_corner_stress_growth(wedge48):
    shape, g = wedge48
    bf = boundary_field(g, shape, 0.0)
    zc = shape.z(np.array([HALF_PI]))[0][0]
    d = np.array([1e-2, 1e-3])
    s = [stress_at(bf, zc + 1j * x) for x in d]
    total = np.array([v.sigma_x + v.sigma_y for v in s])
    slope = np.log(total[1] / total[0]) / np.log(d[0] / d[1])
    assert_allclose(slope, 1 - wedge_root_t1(2 * np.pi / 3), atol=0.02)


def test_l2_norm_normalisation():
    assert l2_norm(lambda t: np.zeros_like(t)) == 0.0
    assert_allclose(l2_norm(lambda t: np.full_like(t, 0.3)), 0.3, rtol=1e-14)
    assert_allclose(l2_norm(np.cos), np.sqrt(0.5), rtol=1e-14)


def test_l2_error_of_circle(circle32):
    from goursatbie.oracles import circle_phi

    _, g = circle32
    assert l2_error_phi(g, circle_phi) <= 1e-10


def test_grid_mask_symmetry_and_output(circle_field, tmp_path):
    grid = field_grid(circle_field, (-2, 2, -2, 2), 9, 9)
    assert not grid.valid[4, 4]
    assert np.isnan(grid.sigma_x[4, 4])
    v = grid.valid
    assert np.array_equal(v, v[:, ::-1]) and np.array_equal(v, v[::-1])
    assert_allclose(grid.sigma_x[v], grid.sigma_x[:, ::-1][v], atol=1e-6)
    assert_allclose(grid.tau_xy[v], -grid.tau_xy[::-1][v], atol=1e-6)
    X, Y = np.meshgrid(grid.x, grid.y)
    ref = kirsch(X + 1j * Y)
    for got, want in zip((grid.sigma_x, grid.sigma_y, grid.tau_xy), ref):
        assert_allclose(got[v], want[v], atol=1e-8)
    assert len(grid.samples()) == v.sum()

    write_grid(grid, tmp_path / "g.csv", tmp_path / "g.json")
    lines = (tmp_path / "g.csv").read_text().splitlines()
    assert lines[0] == "x,y,valid,sigma_x,sigma_y,tau_xy"
    assert len(lines) == 82
    meta = json.loads((tmp_path / "g.json").read_text())
    assert meta["shape"] == "circle" and meta["N"] == 32 and meta["bbox"] == [-2, 2, -2, 2]
    first = (tmp_path / "g.csv").read_bytes()
    write_grid(grid, tmp_path / "g.csv")
    assert (tmp_path / "g.csv").read_bytes() == first


def test_grid_near_band_masked(circle_field):
    grid = field_grid(circle_field, (0.9995, 1.0005, -0.0001, 0.0001), 3, 3)
    assert not grid.valid.any()
