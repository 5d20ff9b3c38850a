from functools import lru_cache

import numpy as np
import pytest

from goursatbie import SolverConfig, circle, ellipse, overlapping_circles, solve


@lru_cache(maxsize=None)
def solved(kind, N, chi=0.0, param=None, use_corner=None, corner_terms=None):
    """Solve once per configuration and share the result between tests."""
    if kind == "circle":
        shape = circle()
    elif kind == "ellipse":
        shape = ellipse(param)
    else:
        shape = overlapping_circles(param)
    cfg = SolverConfig(N=N, chi=chi, use_corner=use_corner, corner_terms=corner_terms)
    return shape, solve(shape, cfg)


@pytest.fixture(scope="session")
def circle32():
    return solved("circle", 32)


@pytest.fixture(scope="session")
def ellipse32():
    return solved("ellipse", 32, param=0.5)


@pytest.fixture(scope="session")
def lens32():
    return solved("overlap", 32, param=np.pi / 3)


@pytest.fixture(scope="session")
def wedge48():
    return solved("overlap", 48, param=2 * np.pi / 3)
