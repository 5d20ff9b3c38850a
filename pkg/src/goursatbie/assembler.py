"""Collocation discretization of the boundary integro-differential equation.

The unknowns are the real coefficients ``(a_0..a_{N-1}, b_0..b_{N-1})`` of
:class:`~goursatbie.goursat.AugmentedGoursat`.  Each collocation point
contributes the real and imaginary parts of two complex equations:

* the traction-free boundary equation, with every principal-value integral
  written as ``pi*i*g(z_i) + int (g(z) - g(z_i)) / (z - z_i) dz``;
* the analyticity condition ``(1/2 pi i) PV int phi/(z - z_i) dz + phi_i/2 = 0``.

Two end conditions (``Re phi(pi/2) = 0`` and ``Im phi(0) = 0``) close the
system, which is solved in the least-squares sense.

Contour integrals over [0, 2*pi] are computed on the first quadrant, the other
three quadrants being mirror images.  Every quadrant is cut into panels with
Chebyshev-spaced breakpoints; the panels touching the quadrant ends use nested
quadrature so that corner powers and the near-singular kernels of mirrored
collocation points are resolved.
"""

import logging
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .errors import ConfigError, InvalidArgumentError
from .corner import wedge_eigenvalues
from .goursat import AugmentedGoursat, basis, normalize_corner
from .linsolve import DenseSystem, lstsq
from .quadrature import legendre_rule, nested_integrate
from .shapes import HALF_PI, map_derivative, map_value

__all__ = ["CollocationGrid", "SolverConfig", "collocation_points", "corner_terms", "assemble", "solve"]

log = logging.getLogger(__name__)

# Quadrature nodes closer than this to a collocation point use the removable limit.
LIMIT_WINDOW = 1e-10

# Wedge eigenvalues below this real part make phi' non-smooth enough to stall
# spectral convergence, so they all enter the basis.
SUBDOMINANT_LIMIT = 2.0

# Orientation of theta relative to the reference angle in each quadrant.
_ORIENTATION = {1: 1.0, 2: -1.0, 3: 1.0, 4: -1.0}


@dataclass(frozen=True)
class CollocationGrid:
    theta: np.ndarray
    z: Optional[np.ndarray] = None
    dz: Optional[np.ndarray] = None
    d2z: Optional[np.ndarray] = None

    def __len__(self):
        return len(self.theta)


@dataclass(frozen=True)
class SolverConfig:
    N: int = 64
    chi: float = 0.0
    use_corner: Optional[bool] = None
    quad_n: int = 16
    quad_eps: float = 1e-15
    panels: Optional[int] = None
    corner_exponent: Optional[complex] = None
    corner_terms: Optional[int] = None
    pivoting: Optional[bool] = None

    def __post_init__(self):
        if int(self.N) != self.N or self.N < 8:
            raise ConfigError(f"N must be an integer >= 8, got {self.N!r}")
        if not 0.0 < self.quad_eps <= 1e-6:
            raise ConfigError(f"quad_eps must lie in (0, 1e-6], got {self.quad_eps!r}")
        if self.quad_n < 2:
            raise ConfigError("quad_n must be at least 2")
        if self.corner_terms is not None and self.corner_terms < 1:
            raise ConfigError("corner_terms must be at least 1")

    @property
    def n_panels(self):
        return self.panels if self.panels is not None else max(6, -(-self.N // 3))


def collocation_points(N, shape=None):
    """Gauss-Legendre points of degree N - 1 carried onto (0, pi/2)."""
    if int(N) != N or N < 2:
        raise InvalidArgumentError(f"N must be an integer >= 2, got {N!r}")
    x = legendre_rule(int(N) - 1).nodes
    theta = np.pi * (x + 1.0) / 4.0
    theta.flags.writeable = False
    if shape is None:
        return CollocationGrid(theta)
    z, dz, d2z = shape.z(theta)
    return CollocationGrid(theta, z, dz, d2z)


def corner_terms(shape, cfg):
    """Exponents of the corner basis terms for ``shape`` under ``cfg``.

    Returns None when no corner term is used.  By default every wedge
    eigenvalue with ``Re(lam - 1) < SUBDOMINANT_LIMIT`` is included (always at
    least the dominant one); ``cfg.corner_terms`` caps the count and
    ``cfg.corner_exponent`` replaces the list by a single given exponent.
    """
    use = cfg.use_corner if cfg.use_corner is not None else shape.corner is not None
    if not use:
        return None
    if shape.corner is None:
        raise ConfigError(f"corner term requested but shape {shape.label!r} has no corner")
    if cfg.corner_exponent is not None:
        return normalize_corner(cfg.corner_exponent)
    dominant = shape.corner.basis_exponent
    roots = wedge_eigenvalues(shape.corner.beta, max_real=max(SUBDOMINANT_LIMIT, complex(dominant).real) + 1.0)
    rest = [x for x in roots if complex(x).real < SUBDOMINANT_LIMIT and abs(complex(x) - complex(dominant)) > 1e-8]
    chosen = [dominant] + [x for x in rest if complex(x).real > complex(dominant).real]
    if cfg.corner_terms is not None:
        chosen = chosen[: cfg.corner_terms]
    return normalize_corner(chosen)


def _breakpoints(lo, hi, m):
    u = np.linspace(0.0, np.pi, m + 1)
    x = 0.5 * (1.0 - np.cos(u))
    pts = lo + (hi - lo) * x
    pts[0], pts[-1] = lo, hi
    return pts


class _Integrands:
    """Vectorised integrands of the four Cauchy-type integrals.

    For a node array ``s`` in quadrant ``q`` the call returns an array of shape
    ``(len(s), n_coll, 3 * ncol + 1)`` packing, per collocation point,

    * ``J1`` (columns ``0:ncol``): ``(conj phi - conj phi_i) z' / (z - z_i)``
    * ``J3`` (``ncol:2 ncol``): ``(conj z phi_theta - g_i z') / (z - z_i)``
      with ``g_i = conj(z_i) phi'(z_i)``, or its integrated-by-parts form
    * ``J4`` (``2 ncol:3 ncol``): ``(phi - phi_i) z' / (z - z_i)``
    * ``J2`` (last column): ``(conj z - conj z_i) z' / (z - z_i)``
    """

    def __init__(self, shape, grid, N, p):
        self.shape, self.N, self.p = shape, N, p
        self.theta_i = grid.theta
        self.zi, self.dzi, self.d2zi = grid.z, grid.dz, grid.d2z
        B, dB, d2B = basis(N, grid.theta, p)
        self.Bi, self.dBi, self.d2Bi = B, dB, d2B
        self.gi = np.conj(self.zi)[:, None] * dB / self.dzi[:, None]
        self.ncol = 2 * N
        # Removable limits at s = theta_i (first quadrant only).
        self.lim1 = np.conj(dB)
        self.lim4 = dB
        self.lim2 = np.conj(self.dzi)
        self.lim3 = (
            np.conj(self.dzi)[:, None] * dB + np.conj(self.zi)[:, None] * d2B - self.gi * self.d2zi[:, None]
        ) / self.dzi[:, None]

    def geometry(self, s, q):
        z, dz, _ = self.shape.z(s)
        return map_value(q, z), map_derivative(q, dz)

    def __call__(self, s, q, by_parts=False):
        s = np.asarray(s, dtype=float)
        Z, dZ = self.geometry(s, q)
        B, dB, _ = basis(self.N, s, self.p)
        Bq = map_value(q, B)
        diff = Z[:, None] - self.zi[None, :]
        K1 = dZ[:, None] / diff
        ns, nc, ncol = len(s), len(self.zi), self.ncol
        out = np.empty((ns, nc, 3 * ncol + 1), dtype=complex)
        out[:, :, :ncol] = K1[:, :, None] * (np.conj(Bq)[:, None, :] - np.conj(self.Bi)[None, :, :])
        out[:, :, 2 * ncol : 3 * ncol] = K1[:, :, None] * (Bq[:, None, :] - self.Bi[None, :, :])
        out[:, :, -1] = K1 * (np.conj(Z)[:, None] - np.conj(self.zi)[None, :])
        if by_parts:
            Kth = np.conj(dZ)[:, None] / diff - np.conj(Z)[:, None] * dZ[:, None] / diff**2
            out[:, :, ncol : 2 * ncol] = -Bq[:, None, :] * Kth[:, :, None] - self.gi[None, :, :] * K1[:, :, None]
        else:
            dBq = map_derivative(q, dB)
            out[:, :, ncol : 2 * ncol] = (
                np.conj(Z)[:, None, None] * dBq[:, None, :] - self.gi[None, :, :] * dZ[:, None, None]
            ) / diff[:, :, None]
        if q == 1:
            close = np.abs(s[:, None] - self.theta_i[None, :]) < LIMIT_WINDOW
            if np.any(close):
                m, i = np.nonzero(close)
                out[m, i, :ncol] = self.lim1[i]
                out[m, i, ncol : 2 * ncol] = self.lim3[i]
                out[m, i, 2 * ncol : 3 * ncol] = self.lim4[i]
                out[m, i, -1] = self.lim2[i]
        return out

    def boundary_term(self, s, q):
        """``conj(z) phi / (z - z_i)`` at reference angle ``s`` (per column)."""
        Z, _ = self.geometry(np.atleast_1d(s), q)
        B, _, _ = basis(self.N, np.atleast_1d(s), self.p)
        Bq = map_value(q, B)[0]
        K = np.conj(Z[0]) / (Z[0] - self.zi)
        return K[:, None] * Bq[None, :]


def _quadrant_integrals(f, q, cfg, theta_eps, p):
    rule = legendre_rule(cfg.quad_n)
    x, w = rule.nodes, rule.weights
    corner = p is not None
    top = HALF_PI - theta_eps if corner else HALF_PI
    pts = _breakpoints(0.0, top, cfg.n_panels)
    stats = {"bisections": 0, "resolution_limited": 0}

    def nested(lo, hi, end, by_parts=False):
        res = nested_integrate(
            lambda s: f(s, q, by_parts), lo, hi, n=cfg.quad_n, eps=cfg.quad_eps, singular_end=end, full_output=True
        )
        stats["bisections"] += res.bisections
        stats["resolution_limited"] += int(res.resolution_limited)
        return res.value

    total = nested(pts[0], pts[1], "left")
    for lo, hi in zip(pts[1:-2], pts[2:-1]):
        half = 0.5 * (hi - lo)
        nodes = lo + (x + 1.0) * half
        total = total + np.tensordot(w * half, f(nodes, q), axes=(0, 0))
    total = total + nested(pts[-2], pts[-1], "right")
    if corner:
        total = total + nested(top, HALF_PI, "right", by_parts=True)
    return total, stats


def _cauchy_integrals(shape, grid, N, p, cfg):
    f = _Integrands(shape, grid, N, p)
    theta_eps = 0.5 * grid.theta[0]
    total = 0.0
    stats = {"bisections": 0, "resolution_limited": 0}
    for q in (1, 2, 3, 4):
        part, st = _quadrant_integrals(f, q, cfg, theta_eps, p)
        total = total + part
        for k in stats:
            stats[k] += st[k]
        if p is not None:
            # Boundary terms from integrating conj(z) phi_theta / (z - z_i) by parts.
            c = HALF_PI - theta_eps
            sign = _ORIENTATION[q]
            total[:, f.ncol : 2 * f.ncol] += sign * (f.boundary_term(HALF_PI, q) - f.boundary_term(c, q))
    ncol = f.ncol
    J1 = total[:, :ncol]
    J3 = total[:, ncol : 2 * ncol]
    J4 = total[:, 2 * ncol : 3 * ncol]
    J2 = total[:, -1]
    return f, J1, J2, J3, J4, stats


def assemble(shape, cfg):
    """Build the ``(4N-2) x 2N`` least-squares system for ``shape``."""
    N = int(cfg.N)
    p = corner_terms(shape, cfg)
    grid = collocation_points(N, shape)
    f, J1, J2, J3, J4, stats = _cauchy_integrals(shape, grid, N, p, cfg)
    chi = cfg.chi
    two_pi_i = 2j * np.pi
    zi = grid.z

    # Traction-free equation: linear part and coefficient-free part.
    L = np.conj(f.Bi) + J1 / two_pi_i + f.gi + J3 / two_pi_i
    c = 0.5 * (1 + chi) * np.conj(zi) + (1 + chi) / (2 * two_pi_i) * J2 + 0.5 * (chi - 1) * zi
    # Analyticity condition.
    M = f.Bi + J4 / two_pi_i

    n_coll = len(grid)
    rows = np.empty((4 * N - 2, 2 * N))
    rhs = np.zeros(4 * N - 2)
    labels = []
    rows[0 : 2 * n_coll : 2] = L.real
    rows[1 : 2 * n_coll : 2] = L.imag
    rhs[0 : 2 * n_coll : 2] = -c.real
    rhs[1 : 2 * n_coll : 2] = -c.imag
    for i in range(n_coll):
        labels += [("integral", i, "re"), ("integral", i, "im")]
    off = 2 * n_coll
    rows[off : off + 2 * n_coll : 2] = M.real
    rows[off + 1 : off + 2 * n_coll : 2] = M.imag
    for i in range(n_coll):
        labels += [("analyticity", i, "re"), ("analyticity", i, "im")]
    off += 2 * n_coll
    B_top, _, _ = basis(N, [HALF_PI], p)
    B_bot, _, _ = basis(N, [0.0], p)
    rows[off] = B_top[0].real
    rows[off + 1] = B_bot[0].imag
    labels += [("end", "re_phi_half_pi"), ("end", "im_phi_zero")]
    system = DenseSystem(rows, rhs, labels)
    system.meta = {"corner": p, "grid": grid, "quadrature": stats}
    return system


def solve(shape, cfg):
    """Assemble, solve, and return the fitted boundary Goursat function."""
    system = assemble(shape, cfg)
    p = system.meta["corner"]
    pivoting = cfg.pivoting if cfg.pivoting is not None else p is not None
    result = lstsq(system, pivoting=pivoting)
    diagnostics = {
        "residual_norm": result.residual_norm,
        "condition_estimate": result.condition_estimate,
        "rows": system.shape[0],
        "columns": system.shape[1],
        "quadrature": system.meta["quadrature"],
        "chi": cfg.chi,
        "shape": shape.label,
    }
    log.info("solved %s N=%d: residual %.3e, condition %.3e", shape.label, cfg.N, result.residual_norm, result.condition_estimate)
    return AugmentedGoursat.from_vector(result.x, p, diagnostics)
