"""Boundary values of the decaying Goursat function on the first quadrant.

``phi(theta) = sum a_k T_k + i sum b_k T_k`` with T_k the Chebyshev polynomials
on [0, pi/2].  Corner terms in ``eps = pi/2 - theta`` replace the highest
Chebyshev slots:

* a real exponent ``p`` takes one slot holding ``eps**p``;
* a complex exponent ``p + iq`` takes two slots holding ``eps**p cos(q log eps)``
  and ``eps**p sin(q log eps)``.

Exponents are given dominant first and laid out in reverse, so the dominant
term always sits in the last slot(s); with a single real exponent ``a_{N-1}``
and ``b_{N-1}`` are the corner coefficients.
"""

import json
import numbers
from dataclasses import dataclass, field

import numpy as np

from . import chebyshev
from .errors import DomainError, InvalidArgumentError, InvalidDataError, SingularEvaluationError
from .shapes import HALF_PI, map_derivative, map_value, reduce_angle

__all__ = [
    "AugmentedGoursat",
    "basis",
    "real_basis",
    "normalize_corner",
    "corner_slots",
    "eval_phi",
    "eval_dphi",
    "eval_d2phi",
    "extend",
    "extend_dphi",
]

INTERVAL = (0.0, HALF_PI)


def normalize_corner(corner):
    """``None``, one exponent, or a sequence of them -> tuple of exponents."""
    if corner is None:
        return ()
    if isinstance(corner, numbers.Number):
        corner = (corner,)
    out = []
    for x in corner:
        x = complex(x)
        if not x.real > 0:
            raise InvalidArgumentError(f"corner exponents need a positive real part, got {x!r}")
        out.append(x if x.imag else x.real)
    return tuple(out)


def corner_slots(corner):
    """Number of basis slots taken by the corner terms."""
    return sum(2 if isinstance(x, complex) else 1 for x in normalize_corner(corner))


def _n_cheb(N, corner):
    n = N - corner_slots(corner)
    if n < 2:
        raise InvalidArgumentError(f"N={N} leaves fewer than two Chebyshev terms")
    return n


def _power(theta, x, order):
    """``d^order/dtheta^order`` of ``eps**x``.

    At the corner the value is 0 when the power vanishes there and infinite
    when it blows up.
    """
    gap = np.maximum(HALF_PI - theta, 0.0)
    factor = 1.0
    for k in range(order):
        factor *= -(x - k)
    e = x - order
    with np.errstate(divide="ignore", invalid="ignore"):
        body = factor * np.power(np.where(gap > 0, gap, 1.0), e)
    at_corner = 0.0 if e.real > 0 else (np.inf if e.real < 0 else factor)
    return np.where(gap > 0, body, at_corner)


def _corner_columns(theta, corner, order):
    cols = []
    for x in reversed(normalize_corner(corner)):
        w = _power(theta, x, order)
        if isinstance(x, complex):
            with np.errstate(invalid="ignore"):
                cols += [np.real(w), np.imag(w)]
        else:
            cols.append(np.real(w))
    return cols


def real_basis(N, theta, corner=None):
    """Real basis functions and their first two theta-derivatives.

    Returns three ``(len(theta), N)`` arrays.
    """
    theta = np.atleast_1d(np.asarray(theta, dtype=float))
    n = _n_cheb(N, corner)
    T = chebyshev.basis_matrix(n, theta, *INTERVAL)
    D = chebyshev.derivative_matrix(n, *INTERVAL)
    out = []
    for order, M in enumerate((np.eye(n), D, D @ D)):
        X = np.zeros((len(theta), N))
        X[:, :n] = T @ M
        for k, col in enumerate(_corner_columns(theta, corner, order)):
            X[:, n + k] = col
        out.append(X)
    return tuple(out)


def basis(N, theta, corner=None):
    """Complex basis for the unknown vector ``(a_0..a_{N-1}, b_0..b_{N-1})``."""
    out = []
    for X in real_basis(N, theta, corner):
        B = np.zeros((X.shape[0], 2 * N), dtype=complex)
        B.real[:, :N] = X
        B.imag[:, N:] = X
        out.append(B)
    return tuple(out)


@dataclass
class AugmentedGoursat:
    a: np.ndarray
    b: np.ndarray
    corner: tuple = ()
    diagnostics: dict = field(default_factory=dict)

    def __post_init__(self):
        self.a = np.asarray(self.a, dtype=float).ravel()
        self.b = np.asarray(self.b, dtype=float).ravel()
        if self.a.shape != self.b.shape:
            raise InvalidDataError("a and b must have the same length")
        self.corner = normalize_corner(self.corner)
        _n_cheb(self.N, self.corner)

    @property
    def N(self):
        return len(self.a)

    @property
    def coefficients(self):
        return np.concatenate([self.a, self.b])

    @classmethod
    def from_vector(cls, x, corner=None, diagnostics=None):
        x = np.asarray(x, dtype=float)
        N = len(x) // 2
        return cls(x[:N], x[N:], corner, dict(diagnostics or {}))

    @property
    def corner_exponent(self):
        """Dominant corner exponent ``lam - 1`` (None without a corner term)."""
        return self.corner[0] if self.corner else None

    @property
    def lam(self):
        return None if not self.corner else complex(self.corner[0]).real + 1.0

    @property
    def lam_imag(self):
        return 0.0 if not self.corner else complex(self.corner[0]).imag

    def _series(self):
        n = _n_cheb(self.N, self.corner)
        return (
            chebyshev.ChebSeries(self.a[:n], INTERVAL),
            chebyshev.ChebSeries(self.b[:n], INTERVAL),
        )

    def to_dict(self):
        d = {"N": self.N, "lambda": self.lam}
        if self.corner:
            d["corner_exponents"] = [[complex(x).real, complex(x).imag] for x in self.corner]
        d["a"] = [float(v) for v in self.a]
        d["b"] = [float(v) for v in self.b]
        return d

    def to_json(self, **kw):
        return json.dumps(self.to_dict(), **kw)

    @classmethod
    def from_dict(cls, d):
        if "corner_exponents" in d:
            corner = tuple(complex(re, im) for re, im in d["corner_exponents"])
        elif d.get("lambda") is not None:
            corner = (float(d["lambda"]) - 1.0,)
        else:
            corner = ()
        g = cls(d["a"], d["b"], corner)
        if g.N != int(d["N"]):
            raise InvalidDataError(f"N={d['N']} does not match {g.N} coefficients")
        return g

    @classmethod
    def from_json(cls, text):
        return cls.from_dict(json.loads(text))

    def __call__(self, theta):
        return eval_phi(self, theta)


def _check_quadrant(theta):
    theta = np.asarray(theta, dtype=float)
    if np.any(theta < 0.0) or np.any(theta > HALF_PI):
        raise DomainError("theta must lie in [0, pi/2]")
    return theta


def _corner_part(g, theta, order):
    if not g.corner:
        return 0.0
    worst = min(complex(x).real for x in g.corner)
    if np.any(theta >= HALF_PI) and worst - order < 0:
        raise SingularEvaluationError(
            f"derivative of order {order} is singular at the corner (exponent {worst:.6g})"
        )
    n = _n_cheb(g.N, g.corner)
    coef = g.a[n:] + 1j * g.b[n:]
    total = 0.0
    for c, col in zip(coef, _corner_columns(theta, g.corner, order)):
        total = total + c * col
    return total


def _eval(g, theta, order):
    theta = _check_quadrant(theta)
    sa, sb = g._series()
    if order:
        sa, sb = sa.deriv(order), sb.deriv(order)
    return chebyshev.eval(sa, theta) + 1j * chebyshev.eval(sb, theta) + _corner_part(g, theta, order)


def eval_phi(g, theta):
    return _eval(g, theta, 0)


def eval_dphi(g, theta):
    """``d phi / d theta`` on the first quadrant."""
    return _eval(g, theta, 1)


def eval_d2phi(g, theta):
    return _eval(g, theta, 2)


def extend(g, theta):
    """phi anywhere on [0, 2*pi] from the first-quadrant representation."""
    theta = np.asarray(theta, dtype=float)
    if np.any(theta < 0) or np.any(theta > 2 * np.pi):
        raise DomainError("theta must lie in [0, 2*pi]")
    s, q = reduce_angle(theta)
    return map_value(q, eval_phi(g, s))


def extend_dphi(g, theta):
    theta = np.asarray(theta, dtype=float)
    if np.any(theta < 0) or np.any(theta > 2 * np.pi):
        raise DomainError("theta must lie in [0, 2*pi]")
    s, q = reduce_angle(theta)
    return map_derivative(q, eval_dphi(g, s))
