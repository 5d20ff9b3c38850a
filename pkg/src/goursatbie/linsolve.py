"""Dense least squares through a Householder QR factorization."""

from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import qr, solve_triangular

from .errors import InvalidArgumentError, InvalidDataError, RankDeficiencyError

__all__ = ["DenseSystem", "LstsqResult", "lstsq"]

RANK_TOL = 1e-12


@dataclass
class DenseSystem:
    A: np.ndarray
    rhs: np.ndarray
    row_labels: list = field(default_factory=list)

    def __post_init__(self):
        self.A = np.asarray(self.A, dtype=float)
        self.rhs = np.asarray(self.rhs, dtype=float).ravel()
        if self.A.ndim != 2 or self.A.shape[0] != self.rhs.shape[0]:
            raise InvalidDataError(f"incompatible shapes {self.A.shape} and {self.rhs.shape}")
        if not (np.all(np.isfinite(self.A)) and np.all(np.isfinite(self.rhs))):
            raise InvalidDataError("system contains non-finite entries")

    @property
    def shape(self):
        return self.A.shape


@dataclass
class LstsqResult:
    x: np.ndarray
    residual_norm: float
    condition_estimate: float

    def __iter__(self):
        # allows ``x, res = lstsq(sys)``
        return iter((self.x, self.residual_norm))


def lstsq(system, pivoting=False, equilibrate=True):
    """Minimise ``||A x - rhs||_2``.

    With ``equilibrate`` the columns are first scaled to unit Euclidean norm,
    so a corner column is not judged against the much larger derivative
    columns.  Raises :class:`RankDeficiencyError` when a diagonal entry of
    the triangular factor drops below ``1e-12 * ||A||`` (of the scaled matrix).
    """
    A, b = system.A, system.rhs
    m, n = A.shape
    if m < n:
        raise InvalidArgumentError(f"system is underdetermined ({m} rows, {n} columns)")
    scale = np.ones(n)
    if equilibrate:
        norms = np.linalg.norm(A, axis=0)
        zero = np.flatnonzero(norms == 0)
        if zero.size:
            raise RankDeficiencyError(f"column {zero[0]} is identically zero", index=int(zero[0]))
        scale = norms
        A = A / scale
    if pivoting:
        Q, R, perm = qr(A, mode="economic", pivoting=True)
    else:
        Q, R = qr(A, mode="economic")
        perm = np.arange(n)
    diag = np.abs(np.diag(R))
    norm_a = np.linalg.norm(A, 2)
    small = np.flatnonzero(diag < RANK_TOL * norm_a)
    if small.size:
        raise RankDeficiencyError(
            f"matrix is rank deficient at column {perm[small[0]]} "
            f"(|R_kk| = {diag[small[0]]:.3e}, ||A|| = {norm_a:.3e})",
            index=int(perm[small[0]]),
        )
    y = solve_triangular(R, Q.T @ b)
    x = np.empty(n)
    x[perm] = y
    residual = float(np.linalg.norm(A @ x - b))
    x = x / scale
    return LstsqResult(x, residual, float(diag.max() / diag.min()))
