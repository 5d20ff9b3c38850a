"""Corner exponents of a traction-free wedge and the near-corner asymptote of
the overlapping-circles trace.

Near a corner of opening ``beta`` (measured through the solid) the stresses
behave like ``r**(lam - 2)`` and the Goursat function like ``r**(lam - 1)``,
where ``x = lam - 1`` solves ``sin(x*beta) + x*sin(beta) = 0``.
"""

from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from .errors import DomainError, InvalidArgumentError, RootFindingError

__all__ = [
    "CornerSpec",
    "williams_residual",
    "williams_exponent",
    "wedge_eigenvalues",
    "wedge_root_t1",
    "ling_corner_asymptote",
]

_SCAN_LO = 1e-8
_SCAN_HI = 5.0
_SCAN_INTERVALS = 400
_XTOL = 1e-13


@dataclass(frozen=True)
class CornerSpec:
    """Corner at theta = pi/2 with opening ``beta`` through the solid.

    ``lam`` is the real part of the dominant wedge eigenvalue.  For openings
    below pi the dominant eigenvalue is a complex pair; ``lam_imag`` then
    holds its imaginary part and the basis carries the pair as two real
    columns.
    """

    beta: float
    lam: float
    lam_imag: float = 0.0

    @property
    def exponent(self):
        return self.lam - 1.0

    @property
    def basis_exponent(self):
        """Power used by the corner basis term: real, or complex for a pair."""
        return complex(self.lam - 1.0, self.lam_imag) if self.lam_imag else self.lam - 1.0

    @property
    def singular(self):
        return self.lam < 2.0


def williams_residual(lam, beta):
    x = np.asarray(lam) - 1.0
    return np.sin(x * beta) + x * np.sin(beta)


def williams_exponent(beta):
    """Dominant corner exponent for an opening ``beta`` in (0, 2*pi)."""
    beta = float(beta)
    if not 0.0 < beta < 2.0 * np.pi:
        raise DomainError(f"corner angle must lie in (0, 2*pi), got {beta!r}")
    if abs(beta - np.pi) <= 4 * np.spacing(np.pi):
        return CornerSpec(beta, 2.0)
    f = lambda x: np.sin(x * beta) + x * np.sin(beta)
    # Roots are spaced roughly 2*pi/beta apart, so narrow wedges need a longer scan.
    hi = max(_SCAN_HI, 4.0 * np.pi / beta)
    xs = np.linspace(_SCAN_LO, hi, _SCAN_INTERVALS + 1)
    fs = f(xs)
    change = np.flatnonzero(np.sign(fs[:-1]) * np.sign(fs[1:]) <= 0)
    if change.size:
        k = change[0]
        lo, up = xs[k], xs[k + 1]
        try:
            x = brentq(f, lo, up, xtol=_XTOL, rtol=4 * np.finfo(float).eps)
        except ValueError as exc:
            raise RootFindingError(f"bracketing failed on [{lo}, {up}]", bracket=(lo, up)) from exc
        return CornerSpec(beta, 1.0 + x)
    # No sign change: the smallest roots form a complex conjugate pair.
    roots = wedge_eigenvalues(beta, hi)
    if not roots:
        raise RootFindingError(f"no root of the wedge equation in ({_SCAN_LO}, {hi})", bracket=(_SCAN_LO, hi))
    x = complex(roots[0])
    return CornerSpec(beta, 1.0 + x.real, abs(x.imag))


def wedge_eigenvalues(beta, max_real=4.0):
    """All roots ``x = lam - 1`` of the wedge equation with ``0 < Re x < max_real``.

    Complex roots come in conjugate pairs; only the member with ``Im x >= 0``
    is returned.  Roots are sorted by real part, so the first entry is the
    dominant exponent (real roots are returned as floats).
    """
    beta = float(beta)
    if not 0.0 < beta < 2.0 * np.pi:
        raise DomainError(f"corner angle must lie in (0, 2*pi), got {beta!r}")
    sb = np.sin(beta)
    f = lambda x: np.sin(x * beta) + x * sb
    df = lambda x: beta * np.cos(x * beta) + sb
    found = []
    seeds = np.add.outer(np.linspace(0.05, max_real + 0.5, int(20 * max_real) + 1), 1j * np.linspace(0.0, max(2.0, 0.6 * max_real), 9)).ravel()
    for x in seeds.astype(complex):
        with np.errstate(all="ignore"):
            for _ in range(60):
                step = f(x) / df(x)
                if not np.isfinite(step):
                    break
                x -= step
                if abs(step) < 1e-15 * max(1.0, abs(x)):
                    break
            res = abs(f(x))
        if not res <= 1e-12 or not 1e-6 < x.real < max_real:
            continue
        x = complex(x.real, abs(x.imag))
        if abs(x.imag) < 1e-9:
            x = complex(x.real, 0.0)
        if all(abs(x - y) > 1e-8 for y in found):
            found.append(x)
    found.sort(key=lambda z: (z.real, z.imag))
    out = []
    for x in found:
        if x.imag == 0.0:
            # polish real roots with a bracketing solver
            lo, hi = x.real - 1e-6, x.real + 1e-6
            out.append(brentq(f, lo, hi, xtol=_XTOL) if f(lo) * f(hi) < 0 else x.real)
        else:
            out.append(x)
    return out


def wedge_root_t1(alpha):
    """Smallest positive root of ``sin(2*alpha*t) + t*sin(2*alpha) = 0``."""
    alpha = float(alpha)
    if not np.pi / 2 < alpha < np.pi:
        raise DomainError(f"alpha must lie in (pi/2, pi), got {alpha!r}")
    g = lambda t: np.sin(2 * alpha * t) + t * np.sin(2 * alpha)
    # g > 0 just above 0 and g(1) = 2 sin(2 alpha) < 0 on this range.
    return brentq(g, 1e-6, 1.0, xtol=1e-15, rtol=4 * np.finfo(float).eps, maxiter=200)


def ling_corner_asymptote(alpha, K, N1, N2, eps):
    """Leading behaviour of the overlapping-circles trace at ``pi/2 - eps``.

    Comes from the residue of the transform integrand at its first pole
    ``i*t1`` on the imaginary axis.
    """
    alpha = float(alpha)
    if not np.pi / 2 < alpha < np.pi:
        raise DomainError(f"alpha must lie in (pi/2, pi), got {alpha!r}")
    eps = np.asarray(eps, dtype=float)
    if np.any(eps <= 0):
        raise InvalidArgumentError("eps must be positive")
    t = wedge_root_t1(alpha)
    cot_a = np.cos(alpha) / np.sin(alpha)
    numer = 2.0 * K + (N1 - N2) * t * (t + cot_a / np.tan(alpha * t))
    denom = 2.0 * alpha * np.cos(2.0 * alpha * t) + np.sin(2.0 * alpha)
    scale = 2.0 * np.pi * np.sin(alpha) * np.sin(alpha * t)
    return -numer / denom * scale * (2.0 * np.sin(alpha) / eps) ** (1.0 - t)
