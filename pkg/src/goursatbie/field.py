"""Boundary data, continuation into the solid, stresses and error norms.

The total potentials are ``Phi = (1 + chi) z / 4 + phi`` and
``Psi = (chi - 1) z / 2 + h``; ``h`` follows from ``phi`` through the
traction-free condition.  Away from the hole both perturbation functions are
recovered from their boundary values with the exterior Cauchy formula

    F(zeta) = -(1 / 2 pi i) * integral_L F(z) / (z - zeta) dz,

L running counter-clockwise around the hole.
"""

import json
import logging
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import minimize_scalar

from .errors import DomainError, InvalidArgumentError
from .goursat import eval_dphi, eval_phi
from .quadrature import legendre_rule, nested_integrate
from .shapes import HALF_PI, map_derivative, map_value

__all__ = [
    "BoundaryField",
    "StressSample",
    "FieldGrid",
    "recover_h",
    "boundary_field",
    "continue_interior",
    "stress_at",
    "trace",
    "l2_norm",
    "l2_error_phi",
    "l2_error_trace",
    "cauchy_residual",
    "analyticity_residual",
    "traction_residual",
    "field_grid",
    "write_grid",
]

log = logging.getLogger(__name__)

NEAR_BAND = 1e-3  # points closer than this to the contour are flagged
REFINE_BELOW = 0.05  # points closer than this get a locally graded rule
PANEL_WIDTH = 0.02
GRADING_LEVELS = 40
FD_STEP = 1e-5


def recover_h(g, shape, chi, theta):
    """``h`` on the first quadrant from the traction-free condition."""
    theta = np.asarray(theta, dtype=float)
    z, dz, _ = shape.z(theta)
    dphi_z = eval_dphi(g, theta) / dz
    phi = eval_phi(g, theta)
    k = (1.0 + chi) / 4.0
    return -np.conj(phi) - k * np.conj(z) - np.conj(z) * (dphi_z + k) - 0.5 * (chi - 1.0) * z


def trace(g, shape, chi, theta):
    """``sigma_x + sigma_y = 1 + chi + 4 Re phi'(z)`` on the first quadrant."""
    theta = np.asarray(theta, dtype=float)
    _, dz, _ = shape.z(theta)
    return 1.0 + chi + 4.0 * np.real(eval_dphi(g, theta) / dz)


def _breakpoints(centre=None, scale=None):
    """Panel edges on [0, pi/2], graded geometrically toward both ends and,
    optionally, toward ``centre`` down to ``scale``."""
    inner = np.linspace(PANEL_WIDTH, HALF_PI - PANEL_WIDTH, int(np.ceil((HALF_PI - 2 * PANEL_WIDTH) / PANEL_WIDTH)) + 1)
    graded = PANEL_WIDTH * 0.5 ** np.arange(1, GRADING_LEVELS)
    pts = [inner, graded, HALF_PI - graded, [0.0, HALF_PI]]
    if centre is not None:
        steps = scale * 2.0 ** np.arange(0, 12)
        steps = steps[steps < PANEL_WIDTH]
        pts += [centre - steps, centre + steps, [centre]]
    pts = np.unique(np.clip(np.concatenate([np.ravel(p) for p in pts]), 0.0, HALF_PI))
    return pts


def _rule(edges, n=16):
    rule = legendre_rule(n)
    lo, hi = edges[:-1, None], edges[1:, None]
    s = (lo + 0.5 * (rule.nodes[None, :] + 1.0) * (hi - lo)).ravel()
    w = (0.5 * (hi - lo) * rule.weights[None, :]).ravel()
    return s, w


@dataclass
class BoundaryField:
    """Boundary data of a solved problem plus a contour rule for Cauchy integrals.

    ``theta``, ``phi``, ``dphi`` (theta-derivative), ``h`` and ``trace`` are
    samples on the first quadrant; ``g``, ``shape`` and ``chi`` allow further
    evaluation.
    """

    g: object
    shape: object
    chi: float
    theta: np.ndarray
    phi: np.ndarray
    dphi: np.ndarray
    h: np.ndarray
    trace: np.ndarray
    _contour: dict = field(default_factory=dict, repr=False)

    def values(self, s):
        """``(z, z' , phi, h)`` at reference angles ``s`` in the first quadrant."""
        z, dz, _ = self.shape.z(s)
        return z, dz, eval_phi(self.g, s), recover_h(self.g, self.shape, self.chi, s)

    def contour(self, centre=None, scale=None):
        """Nodes on the full contour: ``z``, ``w dz`` and the values of phi and h."""
        key = None if centre is None else (float(centre), float(scale))
        if key in self._contour:
            return self._contour[key]
        s, w = _rule(_breakpoints(centre, scale))
        z, dz, phi, h = self.values(s)
        parts = {"z": [], "dz": [], "phi": [], "h": []}
        for q in (1, 2, 3, 4):
            parts["z"].append(map_value(q, z))
            parts["dz"].append(map_derivative(q, dz) * w)
            parts["phi"].append(map_value(q, phi))
            parts["h"].append(map_value(q, h))
        out = {k: np.concatenate(v) for k, v in parts.items()}
        if key is None:
            self._contour[key] = out
        return out


@dataclass(frozen=True)
class StressSample:
    zeta: complex
    sigma_x: float
    sigma_y: float
    tau_xy: float
    near_boundary: bool = False


def boundary_field(g, shape, chi=0.0, n=201):
    """Sample the boundary data on ``n`` equispaced angles of [0, pi/2).

    The corner itself is left out because ``phi'`` may be singular there.
    """
    theta = np.linspace(0.0, HALF_PI, n, endpoint=False)
    _, dz, _ = shape.z(theta)
    dphi = eval_dphi(g, theta)
    return BoundaryField(
        g,
        shape,
        float(chi),
        theta,
        eval_phi(g, theta),
        dphi,
        recover_h(g, shape, chi, theta),
        1.0 + chi + 4.0 * np.real(dphi / dz),
    )


def _nearest(shape, zeta):
    """Distance to the contour and the reference angle of the closest point.

    A sampled search is refined with a bounded scalar minimisation for points
    close enough to need a locally graded rule.
    """
    zeta = np.atleast_1d(np.asarray(zeta, dtype=complex))
    s0 = np.linspace(0.0, HALF_PI, 1025)
    z0 = shape.z(s0)[0]
    pts = np.concatenate([map_value(q, z0) for q in (1, 2, 3, 4)])
    quad = np.repeat([1, 2, 3, 4], len(s0))
    dist = np.empty(zeta.shape)
    k = np.empty(zeta.shape, dtype=int)
    for lo in range(0, len(zeta), 512):
        d = np.abs(zeta[lo : lo + 512, None] - pts[None, :])
        k[lo : lo + 512] = np.argmin(d, axis=1)
        dist[lo : lo + 512] = d[np.arange(d.shape[0]), k[lo : lo + 512]]
    sref = s0[k % len(s0)]
    for i in np.flatnonzero(dist < 2 * REFINE_BELOW):
        q, j = quad[k[i]], k[i] % len(s0)
        lo, hi = s0[max(j - 1, 0)], s0[min(j + 1, len(s0) - 1)]
        res = minimize_scalar(
            lambda t: abs(map_value(q, shape.z(np.array([t]))[0])[0] - zeta[i]),
            bounds=(lo, hi),
            method="bounded",
            options={"xatol": 1e-14},
        )
        if res.fun < dist[i]:
            dist[i], sref[i] = float(res.fun), float(res.x)
    return dist, sref


def _kernels(diff, order, delta):
    """Centred difference quotients of ``1/(z - zeta)`` in closed form.

    ``order`` 0 is the kernel itself; 1 and 2 are the first and second
    centred differences with step ``delta``, written without cancellation.
    """
    if order == 0:
        return 1.0 / diff
    d2 = diff * diff - delta * delta
    if order == 1:
        return 1.0 / d2
    return 2.0 / (diff * d2)


def _cauchy(boundary, zeta, orders=(0,), delta=None):
    """Exterior Cauchy integrals of phi and h (and their difference quotients)."""
    zeta = np.atleast_1d(np.asarray(zeta, dtype=complex))
    if np.any(boundary.shape.contains(zeta)):
        raise DomainError("point lies inside the hole")
    dist, sref = _nearest(boundary.shape, zeta)
    if np.any(dist < 1e-12):
        raise DomainError("point lies on the boundary")
    if delta is None:
        delta = FD_STEP * (1.0 + np.abs(zeta))
    delta = np.broadcast_to(np.asarray(delta, dtype=float), zeta.shape)
    results = {o: (np.empty(zeta.shape, complex), np.empty(zeta.shape, complex)) for o in orders}
    far = dist >= REFINE_BELOW
    groups = [(np.flatnonzero(far), boundary.contour())]
    groups += [(np.array([i]), boundary.contour(sref[i], 0.5 * dist[i])) for i in np.flatnonzero(~far)]
    for idx, c in groups:
        for lo in range(0, len(idx), 256):
            chunk = idx[lo : lo + 256]
            diff = c["z"][None, :] - zeta[chunk, None]
            for o in orders:
                K = _kernels(diff, o, delta[chunk, None]) * c["dz"][None, :]
                results[o][0][chunk] = -(K @ c["phi"]) / (2j * np.pi)
                results[o][1][chunk] = -(K @ c["h"]) / (2j * np.pi)
    return results, dist


def continue_interior(boundary, zeta):
    """``(phi(zeta), h(zeta))`` at points of the solid.

    Raises :class:`DomainError` inside the hole or on the contour.  Points
    within ``NEAR_BAND`` of the contour are computed but logged.
    """
    res, dist = _cauchy(boundary, zeta)
    if np.any(dist < NEAR_BAND):
        log.warning("%d point(s) within %.0e of the contour", int(np.sum(dist < NEAR_BAND)), NEAR_BAND)
    phi, h = res[0]
    if np.ndim(zeta) == 0:
        return complex(phi[0]), complex(h[0])
    return phi, h


def _stresses(boundary, zeta):
    zeta = np.atleast_1d(np.asarray(zeta, dtype=complex))
    res, dist = _cauchy(boundary, zeta, orders=(1, 2))
    dphi, dh = res[1]
    d2phi, _ = res[2]
    chi = boundary.chi
    s = 1.0 + chi + 4.0 * dphi.real
    d = 2.0 * (np.conj(zeta) * d2phi + 0.5 * (chi - 1.0) + dh)
    sx = 0.5 * (s - d.real)
    sy = 0.5 * (s + d.real)
    return sx, sy, 0.5 * d.imag, dist


def stress_at(boundary, zeta):
    """Stresses at one point of the solid."""
    sx, sy, txy, dist = _stresses(boundary, [zeta])
    return StressSample(complex(zeta), float(sx[0]), float(sy[0]), float(txy[0]), bool(dist[0] < NEAR_BAND))


def l2_norm(f, panels=32, n=16):
    """``[(2/pi) int_0^{pi/2} |f|^2]^{1/2}`` with the last panel refined toward pi/2."""
    u = np.linspace(0.0, np.pi, panels + 1)
    edges = HALF_PI * 0.5 * (1.0 - np.cos(u))
    s, w = _rule(edges[:-1], n)
    total = float(w @ np.abs(f(s)) ** 2)
    total += nested_integrate(lambda t: np.abs(f(t)) ** 2, edges[-2], HALF_PI, n=n, singular_end="right").real
    return float(np.sqrt(2.0 / np.pi * total))


def l2_error_phi(g, oracle):
    return l2_norm(lambda t: eval_phi(g, t) - oracle(t))


def l2_error_trace(g, shape, oracle, chi=0.0):
    return l2_norm(lambda t: trace(g, shape, chi, t) - oracle(t))


def cauchy_residual(shape, values, theta):
    """How far boundary data ``values(s)`` are from the trace of a function
    holomorphic in the solid and vanishing at infinity.

    Returns ``|F0 + (1/2 pi i) int_L (F - F0) / (z - z0) dz|`` at each
    ``theta`` in (0, pi/2); zero for exact data.
    """
    theta = np.atleast_1d(np.asarray(theta, dtype=float))
    out = np.empty(theta.shape)
    for k, t0 in enumerate(theta):
        edges = np.unique(np.concatenate([_breakpoints(), [t0]]))
        s, w = _rule(edges)
        z, dz, _ = shape.z(s)
        F = values(s)
        z0 = shape.z(np.array([t0]))[0][0]
        F0 = values(np.array([t0]))[0]
        total = 0.0
        for q in (1, 2, 3, 4):
            Z = map_value(q, z)
            total = total + np.sum(w * (map_value(q, F) - F0) * map_derivative(q, dz) / (Z - z0))
        out[k] = abs(F0 + total / (2j * np.pi))
    return out


def analyticity_residual(g, shape, theta):
    """Residual of the analyticity condition for phi at boundary angles."""
    return cauchy_residual(shape, lambda s: eval_phi(g, s), theta)


def traction_residual(g, shape, chi, theta):
    """Traction left on the contour when psi is the holomorphic part of its
    boundary data.

    ``h`` is built from phi so that the traction vanishes identically; the
    residual is therefore how far that ``h`` is from a holomorphic trace.
    """
    return cauchy_residual(shape, lambda s: recover_h(g, shape, chi, s), theta)


@dataclass
class FieldGrid:
    x: np.ndarray
    y: np.ndarray
    valid: np.ndarray
    sigma_x: np.ndarray
    sigma_y: np.ndarray
    tau_xy: np.ndarray
    meta: dict

    def samples(self):
        """Valid cells as :class:`StressSample` objects, row-major."""
        out = []
        for i, j in zip(*np.nonzero(self.valid)):
            out.append(StressSample(complex(self.x[j], self.y[i]), self.sigma_x[i, j], self.sigma_y[i, j], self.tau_xy[i, j]))
        return out


def field_grid(boundary, bbox, nx, ny):
    """Stresses on an ``ny x nx`` grid (row-major, y outer).

    Cells inside the hole or within ``NEAR_BAND`` of the contour are marked
    invalid and hold NaN.
    """
    xmin, xmax, ymin, ymax = map(float, bbox)
    if not (xmax > xmin and ymax > ymin) or nx < 1 or ny < 1:
        raise InvalidArgumentError(f"bad grid specification {bbox!r}, {nx}x{ny}")
    x = np.linspace(xmin, xmax, nx)
    y = np.linspace(ymin, ymax, ny)
    Z = (x[None, :] + 1j * y[:, None]).ravel()
    inside = boundary.shape.contains(Z)
    dist = np.full(Z.shape, np.inf)
    dist[~inside] = _nearest(boundary.shape, Z[~inside])[0]
    valid = (~inside) & (dist >= NEAR_BAND)
    sx = np.full(Z.shape, np.nan)
    sy = np.full(Z.shape, np.nan)
    txy = np.full(Z.shape, np.nan)
    if np.any(valid):
        a, b, c, _ = _stresses(boundary, Z[valid])
        sx[valid], sy[valid], txy[valid] = a, b, c
    shape = (ny, nx)
    meta = {
        "shape": boundary.shape.label,
        "shape_params": dict(boundary.shape.params),
        "chi": boundary.chi,
        "N": boundary.g.N,
        "bbox": [xmin, xmax, ymin, ymax],
        "nx": nx,
        "ny": ny,
    }
    return FieldGrid(x, y, valid.reshape(shape), sx.reshape(shape), sy.reshape(shape), txy.reshape(shape), meta)


def write_grid(grid, csv_path, json_path=None):
    """CSV ``x,y,valid,sigma_x,sigma_y,tau_xy`` plus a JSON metadata sidecar."""
    with open(csv_path, "w", newline="") as fh:
        fh.write("x,y,valid,sigma_x,sigma_y,tau_xy\n")
        for i, yv in enumerate(grid.y):
            for j, xv in enumerate(grid.x):
                fh.write(
                    f"{xv:.17g},{yv:.17g},{int(grid.valid[i, j])},"
                    f"{grid.sigma_x[i, j]:.17g},{grid.sigma_y[i, j]:.17g},{grid.tau_xy[i, j]:.17g}\n"
                )
    if json_path is not None:
        with open(json_path, "w") as fh:
            json.dump(grid.meta, fh, indent=2, sort_keys=True)
            fh.write("\n")
