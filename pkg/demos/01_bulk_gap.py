"""
Opening the superconducting branch in a single plate
====================================================

The one-plate self-consistency problem reduces to a scalar equation
tanh(beta * mu) = 2 * mu for the quasiparticle energy mu, with the
order parameter lambda = sqrt(mu^2 - epsilon^2) whenever that root
exists above epsilon.  This script walks the temperature axis and
watches the branch open at the critical point.
"""

import numpy as np

from bcsjj import BulkParams, critical_beta, gap_map, solve_gap

# The splitting epsilon must stay below 1/2 for any ordering at all.
epsilon = 0.3
beta_c = critical_beta(epsilon)
print(f"epsilon = {epsilon}: ordering requires beta > {beta_c:.6f}")
print()

# Scan across the transition.  Below beta_c only the normal branch
# exists; above it the gap grows toward its zero-temperature value
# sqrt(1/4 - epsilon^2) = 0.4.
print(f"{'beta':>10}  {'lambda':>10}  {'mu':>10}  branch")
for beta in (1.5, 2.0, beta_c * 0.999, beta_c * 1.001, 3.0, 5.0, 10.0, 1e4):
    sol = solve_gap(BulkParams(epsilon, beta))
    branch = "superconducting" if sol.superconducting else "normal"
    print(f"{beta:>10.4f}  {sol.lam:>10.6f}  {sol.mu:>10.6f}  {branch}")
print()

# The solver output is a genuine fixed point of the self-consistency
# map, not just a root of the reduced scalar equation.
p = BulkParams(epsilon, 1e4)
sol = solve_gap(p)
print(f"fixed-point defect |gap_map(lambda) - lambda| = "
      f"{abs(gap_map(sol.lam, p) - sol.lam):.3e}")
print()

# Across splittings at effectively zero temperature the gap traces a
# quarter circle: lambda^2 + epsilon^2 = 1/4.
print(f"{'epsilon':>8}  {'lambda':>10}  {'circle defect':>14}")
for eps in np.linspace(0.05, 0.45, 9):
    lam = solve_gap(BulkParams(float(eps), 1e4)).lam
    defect = abs(lam**2 + eps**2 - 0.25)
    print(f"{eps:>8.2f}  {lam:>10.6f}  {defect:>14.2e}")
