"""Hole formed by two overlapping unit circles.

With alpha = pi/3 the hole has a convex tip and the solid wedge there is
thinner than a half plane.  With alpha = 2pi/3 the solid has a re-entrant
corner, the stresses are unbounded there, and the basis needs corner terms
(pi/2 - theta)**x with x taken from the wedge eigenvalue problem.  Without
them the Chebyshev series cannot follow the singularity at all.
"""

import numpy as np

from goursatbie import SolverConfig, overlapping_circles, solve
from goursatbie.assembler import corner_terms
from goursatbie.field import l2_error_trace, trace
from goursatbie.oracles import ling_params, ling_trace

for alpha, label in ((np.pi / 3, "pi/3"), (2 * np.pi / 3, "2pi/3")):
    shape = overlapping_circles(alpha)
    params = ling_params(alpha)
    exact = lambda t: ling_trace(t, params)
    print(f"\nalpha = {label}: corner exponents {corner_terms(shape, SolverConfig(N=16))}")
    for N in (32, 48, 64):
        g = solve(shape, SolverConfig(N=N))
        print(f"  N = {N}: L2 error of sigma_x + sigma_y = {l2_error_trace(g, shape, exact):.2e}")

shape = overlapping_circles(2 * np.pi / 3)
params = ling_params(2 * np.pi / 3)
with_corner = solve(shape, SolverConfig(N=64))
dominant_only = solve(shape, SolverConfig(N=64, corner_terms=1))
without = solve(shape, SolverConfig(N=64, use_corner=False))

print("\n  pi/2 - theta      exact      all terms   dominant   no corner   (relative errors)")
for eps in (1e-2, 1e-3, 1e-4, 1e-6, 1e-8):
    t = np.array([np.pi / 2 - eps])
    ref = ling_trace(t, params)[0]
    errs = [abs(trace(g, shape, 0.0, t)[0] / ref - 1) for g in (with_corner, dominant_only, without)]
    print(f"  {eps:9.0e}   {ref:10.4f}   {errs[0]:.2e}   {errs[1]:.2e}   {errs[2]:.2e}")
