"""Boundary-integral Goursat solver for a hole in an infinite plate under biaxial load."""

from .assembler import SolverConfig, assemble, solve
from .corner import CornerSpec, williams_exponent, wedge_eigenvalues, wedge_root_t1
from .errors import GoursatError
from .field import boundary_field, field_grid, stress_at
from .goursat import AugmentedGoursat
from .shapes import circle, custom_from_samples, ellipse, overlapping_circles

__all__ = [
    "SolverConfig",
    "assemble",
    "solve",
    "CornerSpec",
    "williams_exponent",
    "wedge_eigenvalues",
    "wedge_root_t1",
    "GoursatError",
    "boundary_field",
    "field_grid",
    "stress_at",
    "AugmentedGoursat",
    "circle",
    "ellipse",
    "overlapping_circles",
    "custom_from_samples",
]
