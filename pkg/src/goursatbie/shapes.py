"""Hole boundaries given in polar form r(theta) on the first quadrant.

Every shape is mirror symmetric about both axes, so r is only ever evaluated on
[0, pi/2]; points on the rest of the contour come from reflection.  A shape may
carry a corner at theta = pi/2 (on the positive y axis and, by symmetry, on the
negative one).
"""

from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from . import chebyshev
from .corner import CornerSpec, williams_exponent
from .errors import DomainError, InvalidDataError

__all__ = [
    "BoundaryShape",
    "circle",
    "ellipse",
    "overlapping_circles",
    "custom_from_samples",
    "load_samples_csv",
    "reduce_angle",
    "boundary_point",
]

HALF_PI = 0.5 * np.pi


@dataclass(frozen=True)
class BoundaryShape:
    r: Callable
    dr: Callable
    d2r: Callable
    corner: Optional[CornerSpec] = None
    label: str = "custom"
    params: tuple = ()

    def z(self, theta):
        """Boundary point, first derivative and second derivative on [0, pi/2]."""
        theta = np.asarray(theta, dtype=float)
        r, dr, d2r = self.r(theta), self.dr(theta), self.d2r(theta)
        e = np.exp(1j * theta)
        return r * e, (dr + 1j * r) * e, (d2r - r + 2j * dr) * e

    def contains(self, zeta):
        """True where ``zeta`` lies strictly inside the hole."""
        zeta = np.asarray(zeta, dtype=complex)
        ref, _ = reduce_angle(np.angle(zeta) % (2 * np.pi))
        return np.abs(zeta) < self.r(ref)

    def distance_estimate(self, zeta):
        """Cheap distance from ``zeta`` to the contour (sampled, absolute)."""
        theta = np.linspace(0.0, HALF_PI, 2049)
        z = self.z(theta)[0]
        pts = np.concatenate([z, -np.conj(z), -z, np.conj(z)])
        zeta = np.atleast_1d(np.asarray(zeta, dtype=complex))
        out = np.empty(zeta.shape)
        for lo in range(0, len(zeta), 256):
            out[lo : lo + 256] = np.min(np.abs(zeta[lo : lo + 256, None] - pts[None, :]), axis=1)
        return out


def _const(value):
    return lambda theta: np.full(np.shape(theta), value, dtype=float)


def circle():
    return BoundaryShape(_const(1.0), _const(0.0), _const(0.0), None, "circle")


def ellipse(m):
    """Ellipse with semi-axes 1 + m (x) and 1 - m (y), 0 < m < 1."""
    m = float(m)
    if not 0.0 < m < 1.0:
        raise DomainError(f"ellipse parameter m must lie in (0, 1), got {m!r}")
    e2 = 1.0 - (1.0 - m) ** 2 / (1.0 + m) ** 2
    b = 1.0 - m

    def r(theta):
        return b / np.sqrt(1.0 - e2 * np.cos(theta) ** 2)

    def dr(theta):
        q = 1.0 - e2 * np.cos(theta) ** 2
        return -0.5 * b * q**-1.5 * e2 * np.sin(2 * theta)

    def d2r(theta):
        q = 1.0 - e2 * np.cos(theta) ** 2
        s2 = e2 * np.sin(2 * theta)
        return -0.5 * b * (-1.5 * q**-2.5 * s2**2 + 2.0 * q**-1.5 * e2 * np.cos(2 * theta))

    return BoundaryShape(r, dr, d2r, None, "ellipse", (("m", m),))


def overlapping_circles(alpha):
    """Union of two unit circles centred at (+-cos(alpha), 0).

    The x > 0 arc of the right circle is mirrored across the y axis, which
    leaves a corner of opening 2*alpha (through the solid) at theta = pi/2.
    """
    alpha = float(alpha)
    if not 0.0 < alpha < np.pi:
        raise DomainError(f"alpha must lie in (0, pi), got {alpha!r}")
    c = np.cos(alpha)

    def r(theta):
        return c * np.cos(theta) + np.sqrt(1.0 - (c * np.sin(theta)) ** 2)

    def dr(theta):
        q = 1.0 - (c * np.sin(theta)) ** 2
        return -c * np.sin(theta) - c * c * np.sin(theta) * np.cos(theta) / np.sqrt(q)

    def d2r(theta):
        s, co = np.sin(theta), np.cos(theta)
        q = 1.0 - (c * s) ** 2
        return -c * co - c * c * np.cos(2 * theta) / np.sqrt(q) - c**4 * (s * co) ** 2 / q**1.5

    corner = None if alpha == HALF_PI else williams_exponent(2.0 * alpha)
    return BoundaryShape(r, dr, d2r, corner, "overlap", (("alpha", alpha),))


def custom_from_samples(samples, corner_beta=None):
    """Shape interpolated from r sampled at the first-kind Chebyshev nodes of
    (0, pi/2); derivatives are spectral."""
    samples = np.asarray(samples, dtype=float)
    bad = np.flatnonzero(~(samples > 0))
    if bad.size:
        raise InvalidDataError(f"radius samples must be positive; sample {bad[0]} is {samples[bad[0]]!r}")
    s0 = chebyshev.interpolate(samples, len(samples), 0.0, HALF_PI)
    s1 = s0.deriv()
    s2 = s1.deriv()
    corner = None if corner_beta is None else williams_exponent(corner_beta)
    return BoundaryShape(s0, s1, s2, corner, "custom", (("N", len(samples)),))


def load_samples_csv(path):
    """Read ``theta,r`` rows (optional header) and return the r column."""
    data = np.genfromtxt(path, delimiter=",", comments="#", names=None, dtype=float)
    if data.ndim == 1:
        data = data[None, :]
    data = data[~np.isnan(data).any(axis=1)]
    order = np.argsort(data[:, 0])
    theta, r = data[order, 0], data[order, 1]
    expected = chebyshev.chebyshev_nodes(len(r), 0.0, HALF_PI)
    if not np.allclose(theta, expected, rtol=0, atol=1e-9):
        raise InvalidDataError("theta column does not match the Chebyshev nodes of (0, pi/2)")
    return r


def reduce_angle(theta):
    """Map theta in [0, 2*pi] to its first-quadrant reference angle.

    Returns ``(s, quadrant)`` with quadrant in 1..4.  Quadrant boundaries go
    to the lower quadrant, so theta = pi/2 is treated as the limit from below.
    """
    theta = np.asarray(theta, dtype=float)
    q = np.where(theta <= HALF_PI, 1, np.where(theta <= np.pi, 2, np.where(theta <= 1.5 * np.pi, 3, 4)))
    s = np.select(
        [q == 1, q == 2, q == 3, q == 4],
        [theta, np.pi - theta, theta - np.pi, 2 * np.pi - theta],
    )
    return np.clip(s, 0.0, HALF_PI), q


def map_value(q, v):
    """Image of a first-quadrant value under the reflection for quadrant q."""
    return np.select([q == 1, q == 2, q == 3, q == 4], [v, -np.conj(v), -v, np.conj(v)])


def map_derivative(q, v):
    """Image of a theta-derivative under the reflection for quadrant q."""
    return np.select([q == 1, q == 2, q == 3, q == 4], [v, np.conj(v), -v, -np.conj(v)])


def boundary_point(shape, theta):
    """``(z, dz/dtheta)`` anywhere on [0, 2*pi] using the mirror symmetry."""
    theta = np.asarray(theta, dtype=float)
    if np.any(theta < 0) or np.any(theta > 2 * np.pi):
        raise DomainError("theta must lie in [0, 2*pi]")
    s, q = reduce_angle(theta)
    z, dz, _ = shape.z(s)
    return map_value(q, z), map_derivative(q, dz)
