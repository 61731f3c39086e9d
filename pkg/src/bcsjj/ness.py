"""Steady state of two tunnel-coupled superconducting plates.

With a weak tunneling coupling gamma between the contact rows of two
plates, the long-time state is translation invariant within four site
classes: the deep interior of each plate (I_a, II_a) and the two contact
rows (I_b, II_b).  Interior sites keep their bulk equilibrium states.
Each contact site feels an effective pairing field made of its own
plate's bulk field plus gamma times the contact order parameter of the
*other* plate,

    field_I = lam_I exp(i phi_I) + gamma * Lambda_b_II,

and its state is the part of the bulk state that survives dephasing
under the local Hamiltonian built from that field (the commutant
projection).  The contact order parameters Lambda_b = <sigma_plus> must
then reproduce themselves, a fixed point of two coupled complex
equations solved here by damped iteration with a Newton fallback.

The same fixed point has a closed rational form (used as a
cross-check, never as the defining construction):

    Lambda_b_I = field_I * (eps_I^2 + lam_I * Re(exp(-i phi_I) field_I))
                 / (eps_I^2 + |field_I|^2)

and symmetrically for II, with the contact phase locking onto
arg(field).
"""

import cmath
import math
import warnings
from dataclasses import dataclass, replace

import numpy as np

from . import spin
from .constants import NESS_CHANGE_TOL, NESS_CONVERGED_DEFECT, NEWTON_FD_STEP
from .equilibrium import BulkParams, effective_hamiltonian, solve_gap

REGIONS = ("I_a", "I_b", "II_b", "II_a")

_NEWTON_MAX_ITER = 100
_POLISH_STEPS = 4


@dataclass(frozen=True)
class JunctionParams:
    """Two plates plus the tunneling coupling between their contact rows."""

    bulk_I: BulkParams
    bulk_II: BulkParams
    gamma: float = 0.0

    def __post_init__(self):
        if not math.isfinite(self.gamma):
            raise ValueError(f"gamma must be finite, got {self.gamma}")
        eps_min = min(self.bulk_I.epsilon, self.bulk_II.epsilon)
        if abs(self.gamma) > 0.1 * eps_min:
            warnings.warn(
                f"gamma = {self.gamma} is not small against min(epsilon) = "
                f"{eps_min}; the junction treatment assumes a weak contact",
                stacklevel=2,
            )

    @property
    def delta_phi(self):
        """Bulk phase bias phi_I - phi_II."""
        return self.bulk_I.phi - self.bulk_II.phi


@dataclass(frozen=True, eq=False)
class NessSolution:
    """Converged (or best-effort) junction steady state.

    ``Lambda_b_*`` are the contact order parameters <sigma_plus>;
    ``field_*`` the effective pairing fields entering the contact
    Hamiltonians; ``mu_t_*`` the contact spectral scales
    sqrt(eps^2 + |field|^2); ``rho_b_*`` the contact one-site states.
    """

    params: JunctionParams
    lambda_bulk_I: float
    lambda_bulk_II: float
    Lambda_b_I: complex
    Lambda_b_II: complex
    field_I: complex
    field_II: complex
    mu_t_I: float
    mu_t_II: float
    rho_b_I: np.ndarray
    rho_b_II: np.ndarray
    residual: float
    iterations: int
    converged: bool


@dataclass(frozen=True, eq=False)
class _BulkContext:
    """Both bulk solutions, solved once per junction computation."""

    sol_I: object
    sol_II: object
    Lambda_I: complex
    Lambda_II: complex
    rho_I: np.ndarray
    rho_II: np.ndarray


def _bulk_context(params):
    sol_I = solve_gap(params.bulk_I)
    sol_II = solve_gap(params.bulk_II)
    return _BulkContext(
        sol_I=sol_I,
        sol_II=sol_II,
        Lambda_I=sol_I.lam * cmath.exp(1j * params.bulk_I.phi),
        Lambda_II=sol_II.lam * cmath.exp(1j * params.bulk_II.phi),
        rho_I=sol_I.rho,
        rho_II=sol_II.rho,
    )


def gauge_shift(params, delta):
    """Shift both condensate phases by the same angle."""
    return JunctionParams(
        bulk_I=replace(params.bulk_I, phi=params.bulk_I.phi + delta),
        bulk_II=replace(params.bulk_II, phi=params.bulk_II.phi + delta),
        gamma=params.gamma,
    )


def boundary_hamiltonian(region, params, Lambda_b_I=0j, Lambda_b_II=0j, _ctx=None):
    """Effective one-site Hamiltonian of the given region.

    Interior regions (``I_a``, ``II_a``) see only their bulk field, for
    any gamma.  Contact regions (``I_b``, ``II_b``) see their bulk field
    plus gamma times the opposite contact order parameter.
    """
    if region not in REGIONS:
        raise ValueError(f"unknown region {region!r}, expected one of {REGIONS}")
    ctx = _ctx if _ctx is not None else _bulk_context(params)
    if region == "I_a":
        return effective_hamiltonian(params.bulk_I.epsilon, ctx.Lambda_I)
    if region == "II_a":
        return effective_hamiltonian(params.bulk_II.epsilon, ctx.Lambda_II)
    if region == "I_b":
        field = ctx.Lambda_I + params.gamma * complex(Lambda_b_II)
        return effective_hamiltonian(params.bulk_I.epsilon, field)
    field = ctx.Lambda_II + params.gamma * complex(Lambda_b_I)
    return effective_hamiltonian(params.bulk_II.epsilon, field)


def ness_map(guess, params, _ctx=None):
    """One self-consistency update of the contact order parameters.

    Builds the contact Hamiltonians from the guessed (Lambda_b_I,
    Lambda_b_II), dephases each plate's bulk state in them, and reads
    back <sigma_plus>.  Fixed points are junction steady states.
    """
    ctx = _ctx if _ctx is not None else _bulk_context(params)
    lb_i, lb_ii = complex(guess[0]), complex(guess[1])
    out = []
    for eps, bulk_field, rho_bulk, other in (
        (params.bulk_I.epsilon, ctx.Lambda_I, ctx.rho_I, lb_ii),
        (params.bulk_II.epsilon, ctx.Lambda_II, ctx.rho_II, lb_i),
    ):
        field = bulk_field + params.gamma * other
        h = effective_hamiltonian(eps, field)
        rho_proj = spin.commutant_projection(rho_bulk, h)
        out.append(spin.expectation(rho_proj, spin.SIGMA_PLUS))
    return (out[0], out[1])


def closed_form_rhs(guess, params, _ctx=None):
    """Closed rational form of the self-consistency right-hand side.

    Valid on the ordered branch, where the bulk state satisfies
    tanh(beta mu) = 2 mu; agrees with :func:`ness_map` to rounding and
    is kept as an independent cross-check of the projection route.
    """
    ctx = _ctx if _ctx is not None else _bulk_context(params)
    lb_i, lb_ii = complex(guess[0]), complex(guess[1])
    out = []
    for bulk_params, bulk_sol, bulk_field, other in (
        (params.bulk_I, ctx.sol_I, ctx.Lambda_I, lb_ii),
        (params.bulk_II, ctx.sol_II, ctx.Lambda_II, lb_i),
    ):
        eps = bulk_params.epsilon
        field = bulk_field + params.gamma * other
        aligned = (cmath.exp(-1j * bulk_params.phi) * field).real
        numerator = eps * eps + bulk_sol.lam * aligned
        out.append(field * numerator / (eps * eps + abs(field) ** 2))
    return (out[0], out[1])


def _map_defect(x, params, ctx):
    fx = np.array(ness_map(x, params, ctx), dtype=complex)
    return fx, float(np.max(np.abs(fx - x)))


def _newton_polish(x0, params, ctx, tol):
    """Damped Newton on the 4 real components of the fixed-point defect."""

    def residual(vec):
        z = np.array([vec[0] + 1j * vec[1], vec[2] + 1j * vec[3]])
        fz = ness_map(z, params, ctx)
        g = np.array(fz) - z
        return np.array([g[0].real, g[0].imag, g[1].real, g[1].imag])

    x = np.array([x0[0].real, x0[0].imag, x0[1].real, x0[1].imag])
    gx = residual(x)
    iterations = 0
    for _ in range(_NEWTON_MAX_ITER):
        iterations += 1
        if np.max(np.abs(gx)) < tol:
            break
        jac = np.empty((4, 4))
        for k in range(4):
            bumped = x.copy()
            bumped[k] += NEWTON_FD_STEP
            jac[:, k] = (residual(bumped) - gx) / NEWTON_FD_STEP
        try:
            step = np.linalg.solve(jac, -gx)
        except np.linalg.LinAlgError:
            step, *_ = np.linalg.lstsq(jac, -gx, rcond=None)
        scale = 1.0
        improved = False
        while scale >= 2.0**-30:
            candidate = x + scale * step
            gc = residual(candidate)
            if np.max(np.abs(gc)) < np.max(np.abs(gx)):
                x, gx = candidate, gc
                improved = True
                break
            scale *= 0.5
        if not improved:
            break
    out = np.array([x[0] + 1j * x[1], x[2] + 1j * x[3]])
    return out, iterations


def solve_ness(params, damping=0.5, tol=NESS_CHANGE_TOL, max_iter=100_000, seed=None):
    """Solve the junction fixed point for the contact order parameters.

    Damped iteration seeded from the bulk order parameters (or a caller
    seed for branch exploration), followed by a few undamped polishing
    steps; a damped finite-difference Newton takes over if the iteration
    stalls.  Never raises on non-convergence: the returned solution
    carries ``converged`` and the defect ``residual`` instead.
    """
    if not (0.0 < damping <= 1.0):
        raise ValueError(f"damping must lie in (0, 1], got {damping}")
    if not (tol > 0.0 and math.isfinite(tol)):
        raise ValueError(f"tol must be finite and positive, got {tol}")
    ctx = _bulk_context(params)
    if seed is None:
        x = np.array([ctx.Lambda_I, ctx.Lambda_II], dtype=complex)
    else:
        x = np.array([complex(seed[0]), complex(seed[1])], dtype=complex)

    iterations = 0
    stalled = True
    for _ in range(int(max_iter)):
        fx, defect = _map_defect(x, params, ctx)
        iterations += 1
        change = damping * defect
        x = x + damping * (fx - x)
        if change < tol:
            stalled = False
            break

    if stalled:
        x, newton_iters = _newton_polish(x, params, ctx, tol)
        iterations += newton_iters

    # Undamped polishing: each step multiplies the defect by the local
    # contraction factor (O(gamma)); keep going while it helps.
    fx, defect = _map_defect(x, params, ctx)
    for _ in range(_POLISH_STEPS):
        if defect == 0.0:
            break
        f2, d2 = _map_defect(fx, params, ctx)
        if d2 < defect:
            x, fx, defect = fx, f2, d2
            iterations += 1
        else:
            break

    converged = defect <= max(NESS_CONVERGED_DEFECT, 10.0 * tol)

    field_i = ctx.Lambda_I + params.gamma * x[1]
    field_ii = ctx.Lambda_II + params.gamma * x[0]
    h_i = effective_hamiltonian(params.bulk_I.epsilon, field_i)
    h_ii = effective_hamiltonian(params.bulk_II.epsilon, field_ii)
    sol = NessSolution(
        params=params,
        lambda_bulk_I=ctx.sol_I.lam,
        lambda_bulk_II=ctx.sol_II.lam,
        Lambda_b_I=complex(x[0]),
        Lambda_b_II=complex(x[1]),
        field_I=complex(field_i),
        field_II=complex(field_ii),
        mu_t_I=math.hypot(params.bulk_I.epsilon, abs(field_i)),
        mu_t_II=math.hypot(params.bulk_II.epsilon, abs(field_ii)),
        rho_b_I=spin.commutant_projection(ctx.rho_I, h_i),
        rho_b_II=spin.commutant_projection(ctx.rho_II, h_ii),
        residual=defect,
        iterations=iterations,
        converged=converged,
    )
    return replace(sol, residual=max(defect, verify_steady(sol, _ctx=ctx)))


def verify_steady(sol, params=None, _ctx=None):
    """Steady-state defect of a solution object, rebuilt from scratch.

    Sums the worst commutator max-norm [h_x, rho_x] over the four
    regions with the worst contact self-consistency defect
    |Lambda_b - Tr(rho_b sigma_plus)|.  Small only for genuine steady
    states: perturbing a converged Lambda_b by 1e-3 pushes this above
    1e-5 immediately.
    """
    p = params if params is not None else sol.params
    ctx = _ctx if _ctx is not None else _bulk_context(p)
    regions = (
        (boundary_hamiltonian("I_a", p, _ctx=ctx), ctx.rho_I),
        (boundary_hamiltonian("II_a", p, _ctx=ctx), ctx.rho_II),
        (
            boundary_hamiltonian(
                "I_b", p, Lambda_b_II=sol.Lambda_b_II, _ctx=ctx
            ),
            sol.rho_b_I,
        ),
        (
            boundary_hamiltonian(
                "II_b", p, Lambda_b_I=sol.Lambda_b_I, _ctx=ctx
            ),
            sol.rho_b_II,
        ),
    )
    worst_comm = max(spin.max_abs(spin.commutator(h, rho)) for h, rho in regions)
    defect_i = abs(sol.Lambda_b_I - spin.expectation(sol.rho_b_I, spin.SIGMA_PLUS))
    defect_ii = abs(sol.Lambda_b_II - spin.expectation(sol.rho_b_II, spin.SIGMA_PLUS))
    return worst_comm + max(defect_i, defect_ii)
