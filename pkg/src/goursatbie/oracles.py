"""Closed-form and semi-analytic reference solutions.

* circle: ``phi = (1 - chi) / (2 z)``;
* ellipse ``z = 1/zeta + m*zeta``: ``phi = ((1 - m) - chi*(1 + m)) * zeta / 2``
  with ``|zeta| <= 1`` in the solid;
* two overlapping unit circles: Ling's cosine-transform representation of
  ``sigma_x + sigma_y`` on the boundary, uniaxial or biaxial far field.
"""

from dataclasses import dataclass

import numpy as np

from .corner import ling_corner_asymptote
from .errors import DomainError, SingularEvaluationError
from .quadrature import legendre_rule
from .shapes import HALF_PI, ellipse

__all__ = [
    "circle_phi",
    "circle_trace",
    "ellipse_phi",
    "ellipse_trace",
    "LingParams",
    "ling_F",
    "ling_integrals",
    "ling_K",
    "ling_params",
    "ling_trace",
    "write_trace_csv",
]

# Direct integration is accurate far closer to the corner than 1e-3; the
# asymptote only takes over where the oscillatory integral loses digits.
ASYMPTOTE_BELOW = 1e-10

# At a convex tip (alpha < pi/2) the trace vanishes like a power of eps while
# the rounding error of the direct sum grows like 1e-16 / eps; below this
# distance the limit 0 is closer to the truth than the sum.
ZERO_BELOW = 1e-8


def _quadrant(theta, allow_end=True):
    theta = np.asarray(theta, dtype=float)
    hi = HALF_PI if allow_end else np.nextafter(HALF_PI, 0)
    if np.any(theta < 0) or np.any(theta > hi):
        raise DomainError("theta must lie in [0, pi/2]")
    return theta


def circle_phi(theta, chi=0.0):
    theta = _quadrant(theta)
    return (1.0 - chi) / 2.0 * np.exp(-1j * theta)


def circle_trace(theta, chi=0.0):
    """sigma_x + sigma_y on the unit circle."""
    theta = _quadrant(theta)
    return 1.0 + chi - 2.0 * (1.0 - chi) * np.cos(2.0 * theta)


def _ellipse_zeta(theta, m):
    r = ellipse(m).r(theta)
    c = r * np.cos(theta) / (1.0 + m)
    s = r * np.sin(theta) / (1.0 - m)
    return c - 1j * s


def ellipse_phi(theta, m, chi=0.0):
    theta = _quadrant(theta)
    if not 0.0 < m < 1.0:
        raise DomainError(f"m must lie in (0, 1), got {m!r}")
    return ((1.0 - m) - chi * (1.0 + m)) * _ellipse_zeta(theta, m) / 2.0


def ellipse_trace(theta, m, chi=0.0):
    theta = _quadrant(theta)
    zeta = _ellipse_zeta(theta, m)
    dphi = ((1.0 - m) - chi * (1.0 + m)) / 2.0 / (m - zeta**-2)
    return 1.0 + chi + 4.0 * dphi.real


@dataclass(frozen=True)
class LingParams:
    alpha: float
    N1: float
    N2: float
    K: float


def _check_alpha(alpha):
    alpha = float(alpha)
    if not 0.0 < alpha < np.pi:
        raise DomainError(f"alpha must lie in (0, pi), got {alpha!r}")
    return alpha


def _denominator(s, alpha):
    return np.sinh(2 * s * alpha) + s * np.sin(2 * alpha)


def ling_F(s, params):
    """Transform density ``F(s, alpha)``; even in s, exponentially decaying."""
    a, K, dN = params.alpha, params.K, params.N1 - params.N2
    s = np.abs(np.asarray(s, dtype=float))
    small = s < 1e-8
    ss = np.where(small, 1.0, s)
    num = 2 * K - dN * ss * (ss - np.cos(a) / np.sin(a) / np.tanh(ss * a))
    with np.errstate(over="ignore", invalid="ignore"):
        val = num * np.sinh(ss * a) / _denominator(ss, a)
    val = np.where(np.isfinite(val), val, 0.0)
    limit = (2 * K + dN * np.cos(a) / np.sin(a) / a) * a / (2 * a + np.sin(2 * a))
    return np.where(small, limit, val)


def _grid(S, width, n=16):
    rule = legendre_rule(n)
    edges = np.linspace(0.0, S, max(1, int(np.ceil(S / width))) + 1)
    lo, hi = edges[:-1, None], edges[1:, None]
    nodes = (lo + (rule.nodes[None, :] + 1.0) * 0.5 * (hi - lo)).ravel()
    weights = (0.5 * (hi - lo) * rule.weights[None, :]).ravel()
    return nodes, weights


def _cutoff(alpha, level=1e-17):
    # |F| and the I2 integrand fall off like s**2 exp(-alpha s) or faster.
    s = 1.0
    while s * s * np.exp(-min(alpha, 1.0) * s) > level:
        s += 1.0
    return s


def ling_integrals(alpha, S=None, width=0.25):
    """The two semi-infinite integrals defining K.

    ``I1`` has an algebraic tail ``1/(2 s (s^2 + 1))`` which is integrated in
    closed form beyond ``S``; ``I2`` decays exponentially.
    """
    a = _check_alpha(alpha)
    S = _cutoff(a) if S is None else float(S)
    s, w = _grid(S, width)
    sa = s * a
    with np.errstate(over="ignore", invalid="ignore"):
        # Overflowing nodes sit far out where f1 equals its algebraic tail.
        d = _denominator(s, a)
        f1 = (np.sinh(sa) ** 2 - (s * np.sin(a)) ** 2) / (s * (s * s + 1) * d)
        f2 = s * np.sin(a) ** 2 / d
    f1 = np.where(np.isfinite(f1), f1, 0.5 / (s * (s * s + 1)))
    f2 = np.where(np.isfinite(f2), f2, 0.0)
    I1 = w @ f1 + 0.25 * np.log1p(1.0 / S**2)
    I2 = w @ f2
    return float(I1), float(I2)


def ling_K(alpha, N1=1.0, N2=0.0, S=None):
    """Solve ``4 K I1 + 2 (N1 - N2) I2 = N1`` for K."""
    I1, I2 = ling_integrals(alpha, S)
    return (N1 - 2.0 * (N1 - N2) * I2) / (4.0 * I1)


def ling_params(alpha, chi=0.0):
    """Parameters for far-field tensions ``N1 = 1`` along x and ``N2 = chi``."""
    alpha = _check_alpha(alpha)
    return LingParams(alpha, 1.0, float(chi), ling_K(alpha, 1.0, chi))


def _xi(theta, alpha):
    gamma = theta + np.arcsin(np.sin(theta) * np.cos(alpha))
    ch = (1.0 + np.cos(alpha) * np.cos(gamma)) / (np.cos(alpha) + np.cos(gamma))
    return np.arccosh(np.maximum(ch, 1.0)), ch


def ling_trace(theta, params, asymptote_below=ASYMPTOTE_BELOW):
    """Exact ``sigma_x + sigma_y`` on the overlapping-circles boundary.

    For ``alpha > pi/2`` the corner is singular and ``theta = pi/2`` is
    rejected; within ``asymptote_below`` of it the leading corner term is used.
    For ``alpha <= pi/2`` the end value is the limit (3 for the single circle
    under uniaxial load, 0 at the tip of a solid wedge); for ``alpha < pi/2``
    that limit is also returned within ``ZERO_BELOW`` of the tip.
    """
    a = params.alpha
    scalar = np.ndim(theta) == 0
    theta = np.atleast_1d(_quadrant(theta)).astype(float)
    out = np.empty_like(theta)
    eps = HALF_PI - theta
    at_end = eps <= 0.0
    if np.any(at_end):
        if a > HALF_PI:
            raise SingularEvaluationError("the trace is singular at the corner theta = pi/2")
        if a == HALF_PI:
            out[at_end] = 1.0 + params.N2 - 2.0 * (params.N1 - params.N2) * np.cos(np.pi)
        else:
            out[at_end] = 0.0
    near = (~at_end) & (eps < asymptote_below) & (a > HALF_PI)
    if np.any(near):
        out[near] = ling_corner_asymptote(a, params.K, params.N1, params.N2, eps[near])
    tip = (~at_end) & (eps < ZERO_BELOW) & (a < HALF_PI)
    out[tip] = 0.0
    direct = ~(at_end | near | tip)
    if np.any(direct):
        xi, ch = _xi(theta[direct], a)
        S = _cutoff(a)
        width = min(0.5, 2 * np.pi / max(float(xi.max()), 1.0))
        s, w = _grid(S, width)
        F = ling_F(s, params)
        integral = np.cos(np.outer(xi, s)) @ (w * F)
        out[direct] = 4.0 * (ch - np.cos(a)) * np.sin(a) * integral
    return float(out[0]) if scalar else out


def write_trace_csv(path, theta, values):
    """Write ``theta,value`` rows with round-trip precision."""
    with open(path, "w", newline="") as fh:
        fh.write("theta,value\n")
        for t, v in zip(np.ravel(theta), np.ravel(values)):
            fh.write(f"{t:.17g},{v:.17g}\n")
