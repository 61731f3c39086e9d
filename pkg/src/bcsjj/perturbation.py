"""First order in the tunneling coupling.

Expanding the junction fixed point around gamma = 0 gives closed
formulas for the contact gaps, the pair current and the mode
frequencies, all certified here against central-difference derivatives
of the full solver:

    lambda_b_I  = lam_I + gamma * lam_II * (eps_I / mu_I)^2 cos(dphi) + O(gamma^2)
    j           = -4 gamma lam_I lam_II sin(dphi)            + O(gamma^2)
    nu_t_I      = nu_I + 4 gamma lam_I lam_II cos(dphi) / nu_I + O(gamma^2)

with dphi = phi_I - phi_II and nu = 2 mu.  A historically printed
variant of the contact-gap expansion (no cosine, asymmetric powers) is
kept verbatim in :func:`printed_first_order` purely so reports can
tabulate its discrepancy against the certified formula; it does not
match the solver derivative and is never used elsewhere.
"""

import math
from dataclasses import dataclass, replace

from .constants import CENTRAL_DIFF_STEP
from .equilibrium import solve_gap
from .ness import solve_ness
from .observables import josephson_current


@dataclass(frozen=True)
class FirstOrderReport:
    """Certification of the first-order formulas against the solver.

    ``slopes_*`` map quantity names (``lambda_t_I``, ``lambda_t_II``,
    ``current``, ``nu_t_I``, ``nu_t_II``) to d/dgamma at gamma = 0;
    ``derivative_defects`` are |analytic - numeric|;
    ``remainder_constants`` bound |full - linear| / gamma^2 over the
    probed gammas.  ``slopes_printed`` carries the two legacy contact-gap
    slopes for side-by-side comparison.
    """

    lambda_t_I_lin: float
    lambda_t_II_lin: float
    current_lin: float
    nu_t_I_lin: float
    nu_t_II_lin: float
    slopes_analytic: dict
    slopes_numeric: dict
    slopes_printed: dict
    derivative_defects: dict
    remainder_constants: dict


def _bulk_pair(params):
    sol_i = solve_gap(params.bulk_I)
    sol_ii = solve_gap(params.bulk_II)
    if not (sol_i.superconducting and sol_ii.superconducting):
        raise ValueError(
            "first-order junction formulas need both plates on the ordered "
            "branch; at least one side is normal here"
        )
    return sol_i, sol_ii


def lambda_first_order(params):
    """Contact gaps to first order in gamma."""
    sol_i, sol_ii = _bulk_pair(params)
    cos_dphi = math.cos(params.delta_phi)
    eps_i, eps_ii = params.bulk_I.epsilon, params.bulk_II.epsilon
    lam_i = sol_i.lam + params.gamma * sol_ii.lam * (eps_i / sol_i.mu) ** 2 * cos_dphi
    lam_ii = sol_ii.lam + params.gamma * sol_i.lam * (eps_ii / sol_ii.mu) ** 2 * cos_dphi
    return (lam_i, lam_ii)


def printed_first_order(params):
    """Legacy printed form of the contact-gap expansion, verbatim.

    Disagrees with :func:`lambda_first_order` (and with the solver
    derivative): the phase dependence is missing and the powers are
    asymmetric between the plates.  Kept only for discrepancy tables.
    """
    sol_i, sol_ii = _bulk_pair(params)
    lam_i = sol_i.lam - params.gamma * sol_i.lam**2 * sol_ii.lam / sol_i.mu**2
    lam_ii = (
        sol_ii.lam
        + params.gamma * sol_i.lam**2 * params.bulk_II.epsilon**2 / sol_ii.mu**2
    )
    return (lam_i, lam_ii)


def current_first_order(params):
    """Pair current to first order: -4 gamma lam_I lam_II sin(dphi)."""
    sol_i, sol_ii = _bulk_pair(params)
    return -4.0 * params.gamma * sol_i.lam * sol_ii.lam * math.sin(params.delta_phi)


def frequency_first_order(params):
    """Contact mode frequencies to first order in gamma."""
    sol_i, sol_ii = _bulk_pair(params)
    shift = 4.0 * params.gamma * sol_i.lam * sol_ii.lam * math.cos(params.delta_phi)
    return (2.0 * sol_i.mu + shift / (2.0 * sol_i.mu), 2.0 * sol_ii.mu + shift / (2.0 * sol_ii.mu))


def _analytic_slopes(params):
    sol_i, sol_ii = _bulk_pair(params)
    cos_dphi = math.cos(params.delta_phi)
    sin_dphi = math.sin(params.delta_phi)
    eps_i, eps_ii = params.bulk_I.epsilon, params.bulk_II.epsilon
    return {
        "lambda_t_I": sol_ii.lam * (eps_i / sol_i.mu) ** 2 * cos_dphi,
        "lambda_t_II": sol_i.lam * (eps_ii / sol_ii.mu) ** 2 * cos_dphi,
        "current": -4.0 * sol_i.lam * sol_ii.lam * sin_dphi,
        "nu_t_I": 4.0 * sol_i.lam * sol_ii.lam * cos_dphi / (2.0 * sol_i.mu),
        "nu_t_II": 4.0 * sol_i.lam * sol_ii.lam * cos_dphi / (2.0 * sol_ii.mu),
    }


def _printed_slopes(params):
    sol_i, sol_ii = _bulk_pair(params)
    return {
        "lambda_t_I": -sol_i.lam**2 * sol_ii.lam / sol_i.mu**2,
        "lambda_t_II": sol_i.lam**2 * params.bulk_II.epsilon**2 / sol_ii.mu**2,
    }


def _solver_quantities(params):
    sol = solve_ness(params)
    return {
        "lambda_t_I": abs(sol.Lambda_b_I),
        "lambda_t_II": abs(sol.Lambda_b_II),
        "current": josephson_current(sol, params.gamma).j,
        "nu_t_I": 2.0 * sol.mu_t_I,
        "nu_t_II": 2.0 * sol.mu_t_II,
    }


def certify_first_order(params, gammas=(1e-4, 1e-3, 1e-2)):
    """Certify the analytic gamma-slopes against the full solver.

    Central differences at gamma = 0 (step scaled from
    ``CENTRAL_DIFF_STEP``) give the numeric slopes; the probed
    ``gammas`` bound the quadratic remainder of each linearization.
    """
    if not gammas:
        raise ValueError("need at least one gamma to probe the remainder")
    step = CENTRAL_DIFF_STEP * max(1.0, *(abs(g) for g in gammas))
    plus = _solver_quantities(replace(params, gamma=step))
    minus = _solver_quantities(replace(params, gamma=-step))
    numeric = {k: (plus[k] - minus[k]) / (2.0 * step) for k in plus}
    analytic = _analytic_slopes(params)
    printed = _printed_slopes(params)
    defects = {k: abs(analytic[k] - numeric[k]) for k in analytic}

    zero = _solver_quantities(replace(params, gamma=0.0))
    remainders = {k: 0.0 for k in analytic}
    for g in gammas:
        full = _solver_quantities(replace(params, gamma=g))
        for k in analytic:
            linear = zero[k] + analytic[k] * g
            remainders[k] = max(remainders[k], abs(full[k] - linear) / g**2)

    lam_lin = lambda_first_order(params)
    nu_lin = frequency_first_order(params)
    return FirstOrderReport(
        lambda_t_I_lin=lam_lin[0],
        lambda_t_II_lin=lam_lin[1],
        current_lin=current_first_order(params),
        nu_t_I_lin=nu_lin[0],
        nu_t_II_lin=nu_lin[1],
        slopes_analytic=analytic,
        slopes_numeric=numeric,
        slopes_printed=printed,
        derivative_defects=defects,
        remainder_constants=remainders,
    )
