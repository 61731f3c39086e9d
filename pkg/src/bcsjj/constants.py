"""Shared numerical tolerances.

Every fixed tolerance used by the library lives here so the contracts
stay consistent across modules.  Values are absolute unless noted.
"""

# Constructors (Hermitian assembly, density matrices, Bloch round trips)
# are exact up to floating-point rounding; anything beyond this is a bug.
CONSTRUCTION_ATOL = 1e-14

# Algebraic identities checked in floating point (commutators, spectra,
# conservation laws).
ALGEBRA_ATOL = 1e-13

# Input validation is deliberately looser than the construction
# guarantee: matrices that went through downstream arithmetic must still
# be accepted as Hermitian / density inputs.
VALIDATION_ATOL = 1e-10

# Scalar gap bisection width on the spectral gap mu.
GAP_BISECTION_TOL = 1e-14

# Steady-state fixed point: stop when the damped update moves no
# component more than this.
NESS_CHANGE_TOL = 1e-13

# A steady-state solution counts as converged when the residual map
# defect is below this.
NESS_CONVERGED_DEFECT = 1e-12

# Finite-difference step for the Newton fallback Jacobian.
NEWTON_FD_STEP = 1e-7

# Central-difference step for derivative certification at gamma = 0.
CENTRAL_DIFF_STEP = 1e-5

# Krylov propagation tolerance (also the allowed truncated mass when a
# mixed product state is expanded into pure product terms).
KRYLOV_TOL = 1e-10
