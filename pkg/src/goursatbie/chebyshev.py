"""Chebyshev series on a general interval.

Interpolation uses Chebyshev points of the first kind, evaluation uses
Clenshaw's recurrence and differentiation the standard backward recurrence on
the coefficients.
"""

from dataclasses import dataclass

import numpy as np
from scipy.fft import dct

from .errors import DomainError, InvalidArgumentError, InvalidDataError

__all__ = [
    "ChebSeries",
    "chebyshev_nodes",
    "interpolate",
    "clenshaw",
    "derivative_coeffs",
    "derivative_matrix",
    "basis_matrix",
]


@dataclass(frozen=True)
class ChebSeries:
    coeffs: np.ndarray
    interval: tuple = (-1.0, 1.0)

    def __post_init__(self):
        c = np.array(self.coeffs, dtype=float).ravel()
        c.flags.writeable = False
        object.__setattr__(self, "coeffs", c)
        a, b = self.interval
        object.__setattr__(self, "interval", (float(a), float(b)))

    def __len__(self):
        return len(self.coeffs)

    def __call__(self, theta):
        return eval(self, theta)

    def deriv(self, m=1):
        s = self
        for _ in range(m):
            s = derivative(s)
        return s


def _to_unit(theta, a, b):
    return (2.0 * np.asarray(theta, dtype=float) - (a + b)) / (b - a)


def chebyshev_nodes(N, a=-1.0, b=1.0):
    """First-kind Chebyshev points on (a, b), ascending."""
    k = np.arange(N)
    x = -np.cos(np.pi * (k + 0.5) / N)
    return 0.5 * (a + b) + 0.5 * (b - a) * x


def interpolate(f, N, a=-1.0, b=1.0):
    """Chebyshev interpolant of degree ``N - 1`` through the first-kind nodes.

    ``f`` is either a callable taking an array of points in (a, b) or an
    array of ``N`` samples already taken at :func:`chebyshev_nodes`.
    """
    if int(N) != N or N < 1:
        raise InvalidArgumentError(f"N must be a positive integer, got {N!r}")
    if not a < b:
        raise InvalidArgumentError(f"need a < b, got ({a}, {b})")
    N = int(N)
    theta = chebyshev_nodes(N, a, b)
    values = np.asarray(f(theta) if callable(f) else f, dtype=float)
    if values.shape != (N,):
        raise InvalidDataError(f"expected {N} samples, got shape {values.shape}")
    bad = np.flatnonzero(~np.isfinite(values))
    if bad.size:
        i = bad[0]
        raise InvalidDataError(f"non-finite sample {values[i]!r} at node {i} (theta={theta[i]!r})")
    # The nodes are ascending, x_k = -cos(u_k), so T_j(x_k) = (-1)**j cos(j u_k)
    # and the coefficients are a scaled type-II cosine transform.
    c = dct(values, type=2) / N
    c[1::2] *= -1.0
    c[0] *= 0.5
    return ChebSeries(c, (a, b))


def clenshaw(coeffs, x):
    """Evaluate ``sum c_k T_k(x)`` for ``x`` in [-1, 1] (array friendly)."""
    x = np.asarray(x, dtype=float)
    b1 = np.zeros_like(x)
    b2 = np.zeros_like(x)
    for c in coeffs[:0:-1]:
        b1, b2 = 2.0 * x * b1 - b2 + c, b1
    return x * b1 - b2 + (coeffs[0] if len(coeffs) else 0.0)


def eval(s, theta):
    a, b = s.interval
    t = np.asarray(theta, dtype=float)
    if np.any(t < a) or np.any(t > b):
        raise DomainError(f"theta outside [{a}, {b}]")
    x = np.clip(_to_unit(t, a, b), -1.0, 1.0)
    return clenshaw(s.coeffs, x)


def derivative_coeffs(c, a=-1.0, b=1.0):
    """Coefficients of d/dtheta of a series on (a, b); length is preserved."""
    c = np.asarray(c, dtype=float)
    n = len(c)
    d = np.zeros(n + 1)
    for k in range(n - 1, 0, -1):
        d[k - 1] = d[k + 1] + 2.0 * k * c[k]
    d[0] *= 0.5
    return d[:n] * (2.0 / (b - a))


def derivative(s):
    a, b = s.interval
    return ChebSeries(derivative_coeffs(s.coeffs, a, b), s.interval)


def derivative_matrix(n, a=-1.0, b=1.0):
    """Matrix ``D`` with ``derivative_coeffs(c) == D @ c``."""
    return np.column_stack([derivative_coeffs(e, a, b) for e in np.eye(n)]) if n else np.zeros((0, 0))


def basis_matrix(n, theta, a=-1.0, b=1.0):
    """``T[m, k] = T_k`` evaluated at ``theta[m]`` mapped from (a, b)."""
    x = np.clip(_to_unit(np.atleast_1d(theta), a, b), -1.0, 1.0)
    T = np.empty((len(x), n))
    if n > 0:
        T[:, 0] = 1.0
    if n > 1:
        T[:, 1] = x
    for k in range(2, n):
        T[:, k] = 2.0 * x * T[:, k - 1] - T[:, k - 2]
    return T
