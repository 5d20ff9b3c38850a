"""Circular hole under uniaxial tension.

The exact Goursat function is 1/(2z), so this is the cleanest place to watch
spectral convergence: the error falls to roundoff by N=16.  The boundary
trace sigma_x + sigma_y reproduces the Kirsch concentration factor of 3 at the
top of the hole and -1 at its side.
"""

import numpy as np

from goursatbie import SolverConfig, boundary_field, circle, solve, stress_at
from goursatbie.field import l2_error_phi, trace
from goursatbie.oracles import circle_phi

shape = circle()

print(" N   L2 error of phi   condition")
for N in (8, 12, 16, 24, 32):
    g = solve(shape, SolverConfig(N=N))
    print(f"{N:2d}   {l2_error_phi(g, circle_phi):.3e}         {g.diagnostics['condition_estimate']:.1e}")

g = solve(shape, SolverConfig(N=32))
side, top = trace(g, shape, 0.0, np.array([0.0, np.pi / 2]))
print(f"\nsigma_x + sigma_y at the side: {side:+.12f}")
print(f"sigma_x + sigma_y at the top:  {top:+.12f}")

# Stresses off the boundary come from Cauchy integrals of the boundary data.
bf = boundary_field(g, shape)
for zeta in (1.5j, 3j, 10j):
    s = stress_at(bf, zeta)
    r = abs(zeta)
    kirsch_x = 1 + 0.5 / r**2 + 1.5 / r**4
    print(f"zeta = {zeta}: sigma_x = {s.sigma_x:.10f} (Kirsch {kirsch_x:.10f})")
