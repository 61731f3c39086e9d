"""Named invariant checks over the whole pipeline.

Each check measures a defect on a built-in standard grid and compares
it with a fixed threshold.  The `check` CLI subcommand prints one line
per entry; tests call :func:`run_checks` directly.
"""

import math
from dataclasses import dataclass, replace

import numpy as np

from . import lattice, ness, observables, perturbation, spin
from .constants import NESS_CHANGE_TOL
from .equilibrium import BulkParams, critical_beta, gap_map, solve_gap
from .ness import JunctionParams, boundary_hamiltonian, closed_form_rhs, gauge_shift, solve_ness, verify_steady

STANDARD_EPSILONS = (0.2, 0.3)
STANDARD_BETA = 1e4
STANDARD_GAMMAS = (1e-4, 1e-3, 1e-2)
_DELTA_GRID_17 = np.linspace(-math.pi / 2, math.pi / 2, 17)
_DELTA_GRID_33 = np.linspace(-math.pi / 2, math.pi / 2, 33)


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    measured: float
    threshold: float
    note: str = ""


@dataclass(frozen=True)
class CheckOptions:
    damping: float = 0.5
    tolerance: float = NESS_CHANGE_TOL
    max_iter: int = 100_000
    dim_cap: int = lattice.DEFAULT_DIM_CAP
    memory_cap: int | None = None


def _standard_params(eps, gamma, delta, beta=STANDARD_BETA):
    return JunctionParams(
        bulk_I=BulkParams(eps, beta, delta),
        bulk_II=BulkParams(eps, beta, 0.0),
        gamma=gamma,
    )


def _solve(params, opts):
    return solve_ness(
        params,
        damping=opts.damping,
        tol=opts.tolerance,
        max_iter=opts.max_iter,
    )


def _angle_distance(a, b):
    return abs(complex(math.cos(a) - math.cos(b), math.sin(a) - math.sin(b)))


def check_equilibrium_fixed_point(opts):
    worst = 0.0
    for eps in (0.1, 0.2, 0.3, 0.4, 0.45):
        for beta in (5.0, 50.0, STANDARD_BETA):
            p = BulkParams(eps, beta)
            sol = solve_gap(p)
            worst = max(worst, abs(gap_map(sol.lam, p) - sol.lam))
    return CheckResult("equilibrium.fixed_point", worst < 1e-11, worst, 1e-11)


def check_equilibrium_threshold(opts):
    violations = 0
    for eps in (0.1, 0.2, 0.3, 0.4, 0.45):
        bc = critical_beta(eps)
        if not solve_gap(BulkParams(eps, bc * 1.01)).superconducting:
            violations += 1
        if solve_gap(BulkParams(eps, bc * 0.99)).superconducting:
            violations += 1
    for eps in (0.5, 0.7, 1.3):
        if solve_gap(BulkParams(eps, 1e6)).superconducting:
            violations += 1
    return CheckResult(
        "equilibrium.threshold", violations == 0, float(violations), 0.5,
        note="branch openings misplaced" if violations else "",
    )


def check_equilibrium_gauge(opts):
    worst = 0.0
    for eps in STANDARD_EPSILONS:
        reference = solve_gap(BulkParams(eps, STANDARD_BETA, 0.0))
        for phi in (0.4, 2.0, -1.1):
            shifted = solve_gap(BulkParams(eps, STANDARD_BETA, phi))
            worst = max(worst, abs(shifted.lam - reference.lam), abs(shifted.mu - reference.mu))
    return CheckResult("equilibrium.gauge", worst < 1e-13, worst, 1e-13)


def _standard_grid_solutions(opts):
    for eps in STANDARD_EPSILONS:
        for gamma in STANDARD_GAMMAS:
            for delta in _DELTA_GRID_17:
                params = _standard_params(eps, gamma, float(delta))
                yield params, _solve(params, opts)


def check_ness_oracle(opts):
    worst = 0.0
    for params, sol in _standard_grid_solutions(opts):
        guess = (sol.Lambda_b_I, sol.Lambda_b_II)
        rhs = closed_form_rhs(guess, params)
        worst = max(
            worst, abs(rhs[0] - sol.Lambda_b_I), abs(rhs[1] - sol.Lambda_b_II)
        )
    return CheckResult("ness.oracle_equivalence", worst < 1e-11, worst, 1e-11)


def check_ness_steady(opts):
    worst = 0.0
    converged = True
    for params, sol in _standard_grid_solutions(opts):
        converged = converged and sol.converged
        worst = max(worst, verify_steady(sol))
    return CheckResult(
        "ness.steady_state", converged and worst < 1e-12, worst, 1e-12,
        note="" if converged else "solver failed to converge somewhere",
    )


def check_ness_gauge(opts):
    worst = 0.0
    base = _standard_params(0.3, 1e-3, 0.3)
    sol = _solve(base, opts)
    for delta in (0.7, 2.1, -1.3, 2.0 * math.pi):
        shifted_sol = _solve(gauge_shift(base, delta), opts)
        worst = max(
            worst,
            abs(abs(shifted_sol.Lambda_b_I) - abs(sol.Lambda_b_I)),
            abs(abs(shifted_sol.Lambda_b_II) - abs(sol.Lambda_b_II)),
            abs(shifted_sol.mu_t_I - sol.mu_t_I),
            abs(shifted_sol.mu_t_II - sol.mu_t_II),
            abs(
                shifted_sol.Lambda_b_I * complex(math.cos(delta), -math.sin(delta))
                - sol.Lambda_b_I
            ),
            abs(
                shifted_sol.Lambda_b_II * complex(math.cos(delta), -math.sin(delta))
                - sol.Lambda_b_II
            ),
        )
    return CheckResult("ness.gauge_covariance", worst < 1e-11, worst, 1e-11)


def check_ness_swap(opts):
    params = JunctionParams(
        bulk_I=BulkParams(0.2, STANDARD_BETA, 0.4),
        bulk_II=BulkParams(0.3, STANDARD_BETA, 0.1),
        gamma=1e-3,
    )
    swapped = JunctionParams(
        bulk_I=params.bulk_II, bulk_II=params.bulk_I, gamma=params.gamma
    )
    a = _solve(params, opts)
    b = _solve(swapped, opts)
    worst = max(
        abs(a.Lambda_b_I - b.Lambda_b_II),
        abs(a.Lambda_b_II - b.Lambda_b_I),
        abs(a.mu_t_I - b.mu_t_II),
        abs(a.mu_t_II - b.mu_t_I),
    )
    return CheckResult("ness.swap_symmetry", worst < 1e-12, worst, 1e-12)


def check_ness_phase_locking(opts):
    worst = 0.0
    for params, sol in _standard_grid_solutions(opts):
        for lam_b, field in (
            (sol.Lambda_b_I, sol.field_I),
            (sol.Lambda_b_II, sol.field_II),
        ):
            if abs(lam_b) == 0.0:
                continue
            worst = max(
                worst, _angle_distance(np.angle(lam_b), np.angle(field))
            )
    return CheckResult("ness.phase_locking", worst < 1e-12, worst, 1e-12)


def check_ness_phase_proportionality(opts):
    """How far phi_t_I - phi_t_II strays from the imposed bias."""
    gamma = 1e-3
    worst = 0.0
    for eps in STANDARD_EPSILONS:
        for delta in np.linspace(0.1, math.pi / 2 - 0.05, 9):
            params = _standard_params(eps, gamma, float(delta))
            sol = _solve(params, opts)
            observed = np.angle(sol.Lambda_b_I) - np.angle(sol.Lambda_b_II)
            worst = max(worst, abs(observed / delta - 1.0))
    return CheckResult(
        "ness.phase_proportionality", worst < 20.0 * gamma, worst, 20.0 * gamma,
        note="contact bias tracks the bulk bias only to O(gamma)",
    )


def check_perturbation_slopes(opts):
    worst = 0.0
    for eps, delta in ((0.3, 0.3), (0.2, 0.8), (0.3, -0.4)):
        params = _standard_params(eps, 1e-3, delta)
        report = perturbation.certify_first_order(params)
        for key, defect in report.derivative_defects.items():
            scale = max(abs(report.slopes_analytic[key]), 1e-3)
            worst = max(worst, defect / scale)
    return CheckResult("perturbation.slopes", worst < 1e-6, worst, 1e-6)


def _law_errors(opts, eps, gamma):
    """Sup-normalized deviations of current and frequency laws."""
    bulk = solve_gap(BulkParams(eps, STANDARD_BETA))
    lam2 = bulk.lam * bulk.lam
    nu0 = 2.0 * bulk.mu
    currents = []
    current_law = []
    shifts = []
    shift_law = []
    for delta in _DELTA_GRID_33:
        params = _standard_params(eps, gamma, float(delta))
        sol = _solve(params, opts)
        currents.append(observables.josephson_current(sol, gamma).j)
        current_law.append(-4.0 * gamma * lam2 * math.sin(delta))
        shifts.append(2.0 * sol.mu_t_I - nu0)
        shift_law.append(4.0 * gamma * lam2 * math.cos(delta) / nu0)
    currents, current_law = np.array(currents), np.array(current_law)
    shifts, shift_law = np.array(shifts), np.array(shift_law)
    sine_err = float(
        np.max(np.abs(currents - current_law)) / np.max(np.abs(current_law))
    )
    cosine_err = float(
        np.max(np.abs(shifts - shift_law)) / np.max(np.abs(shift_law))
    )
    return sine_err, cosine_err


def check_sine_law(opts):
    worst = 0.0
    for eps in STANDARD_EPSILONS:
        sine_err, _ = _law_errors(opts, eps, 1e-3)
        worst = max(worst, sine_err)
    return CheckResult("observables.sine_law", worst <= 1e-2, worst, 1e-2)


def check_cosine_law(opts):
    worst = 0.0
    for eps in STANDARD_EPSILONS:
        _, cosine_err = _law_errors(opts, eps, 1e-3)
        worst = max(worst, cosine_err)
    return CheckResult("observables.cosine_law", worst <= 1e-2, worst, 1e-2)


def check_ccr(opts):
    params = _standard_params(0.3, 0.0, 0.3)
    sol = _solve(params, opts)
    pair = observables.goldstone_operators("I_b", sol)
    zero_defect = observables.ccr_defect(pair)
    worst_rel = 0.0
    for gamma, bound in ((1e-3, 1e-2), (1e-4, 1e-3)):
        sol_g = _solve(replace(params, gamma=gamma), opts)
        for region in ("I_b", "II_b"):
            pair_g = observables.goldstone_operators(region, sol_g)
            rel = observables.ccr_defect(pair_g) / abs(pair_g.ccr_formula)
            worst_rel = max(worst_rel, rel / bound)
    passed = zero_defect < 1e-12 and worst_rel <= 1.0
    measured = max(zero_defect / 1e-12, worst_rel)
    return CheckResult(
        "observables.ccr", passed, measured, 1.0,
        note="measured is the worst bound ratio (gamma = 0 and linear-vanishing)",
    )


def check_dynamics(opts):
    worst_resid = 0.0
    worst_geo = 0.0
    for eps in STANDARD_EPSILONS:
        for gamma in (0.0, 1e-3):
            params = _standard_params(eps, gamma, 0.5)
            sol = _solve(params, opts)
            for region in ("I_b", "II_b"):
                pair = observables.goldstone_operators(region, sol)
                h = boundary_hamiltonian(
                    region,
                    params,
                    Lambda_b_I=sol.Lambda_b_I,
                    Lambda_b_II=sol.Lambda_b_II,
                )
                period = 2.0 * math.pi / pair.frequency
                times = np.linspace(0.0, 2.0 * period, 32)
                worst_resid = max(
                    worst_resid,
                    observables.goldstone_dynamics_residual(pair, h, times),
                )
                _, q = spin.pauli_components(pair.Q)
                _, p = spin.pauli_components(pair.P)
                _, n = spin.pauli_components(h)
                worst_geo = max(
                    worst_geo,
                    abs(float(np.dot(q.real, p.real))),
                    abs(float(np.dot(q.real, n.real))),
                    abs(float(np.dot(p.real, n.real))),
                    abs(float(np.linalg.norm(q.real) - np.linalg.norm(p.real))),
                )
    passed = worst_resid < 1e-10 and worst_geo < 1e-12
    return CheckResult(
        "observables.dynamics", passed, worst_resid, 1e-10,
        note=f"bloch geometry defect {worst_geo:.2e} (threshold 1e-12)",
    )


def check_finite_n_commutator(opts):
    worst = 0.0
    params = _standard_params(0.3, 1e-3, 0.3)
    for n in (1, 2):
        spec = lattice.LatticeSpec(n, dim_cap=opts.dim_cap, memory_cap=opts.memory_cap)
        h = lattice.build_hamiltonian(spec, params)
        q = lattice.build_relative_number(spec)
        j = lattice.build_current(spec, params.gamma)
        defect = abs(1j * (h @ q - q @ h) - j).max()
        worst = max(worst, float(defect))
    return CheckResult("finite_n.commutator_identity", worst < 1e-13, worst, 1e-13)


def check_finite_n_bulk_conservation(opts):
    worst = 0.0
    params = _standard_params(0.3, 0.0, 0.3)
    for n in (1, 2):
        spec = lattice.LatticeSpec(n, dim_cap=opts.dim_cap, memory_cap=opts.memory_cap)
        h = lattice.build_hamiltonian(spec, params)
        q = lattice.build_relative_number(spec)
        worst = max(worst, float(abs(h @ q - q @ h).max()))
    return CheckResult("finite_n.bulk_conservation", worst < 1e-13, worst, 1e-13)


def check_finite_n_current(opts):
    worst = 0.0
    for n in (1, 2):
        for eps, gamma, delta in ((0.3, 1e-3, 0.3), (0.2, 1e-2, -0.7)):
            params = _standard_params(eps, gamma, delta)
            spec = lattice.LatticeSpec(
                n, dim_cap=opts.dim_cap, memory_cap=opts.memory_cap
            )
            j = lattice.build_current(spec, gamma)
            bulk_i = solve_gap(params.bulk_I)
            bulk_ii = solve_gap(params.bulk_II)
            states = [bulk_i.rho] * spec.sites_per_plate + [
                bulk_ii.rho
            ] * spec.sites_per_plate
            measured = lattice.product_state_expectation(j, states).real / n
            expected = -4.0 * gamma * bulk_i.lam * bulk_ii.lam * math.sin(delta)
            worst = max(worst, abs(measured - expected))
    return CheckResult("finite_n.product_current", worst < 1e-12, worst, 1e-12)


_ALL_CHECKS = (
    ("equilibrium.fixed_point", check_equilibrium_fixed_point),
    ("equilibrium.threshold", check_equilibrium_threshold),
    ("equilibrium.gauge", check_equilibrium_gauge),
    ("ness.oracle_equivalence", check_ness_oracle),
    ("ness.steady_state", check_ness_steady),
    ("ness.gauge_covariance", check_ness_gauge),
    ("ness.swap_symmetry", check_ness_swap),
    ("ness.phase_locking", check_ness_phase_locking),
    ("ness.phase_proportionality", check_ness_phase_proportionality),
    ("perturbation.slopes", check_perturbation_slopes),
    ("observables.sine_law", check_sine_law),
    ("observables.cosine_law", check_cosine_law),
    ("observables.ccr", check_ccr),
    ("observables.dynamics", check_dynamics),
    ("finite_n.commutator_identity", check_finite_n_commutator),
    ("finite_n.bulk_conservation", check_finite_n_bulk_conservation),
    ("finite_n.product_current", check_finite_n_current),
)


def _normalize(text):
    return text.replace("-", "_").replace(".", "_").lower()


def run_checks(only=None, opts=None):
    """Run the invariant suite, optionally filtered by name fragment.

    ``only`` matches check names with hyphens, underscores and dots
    interchangeable, so ``--only finite-n`` selects the small-lattice
    identities and ``--only ness`` the steady-state family.
    """
    opts = opts if opts is not None else CheckOptions()
    needle = _normalize(only) if only else None
    results = []
    for name, func in _ALL_CHECKS:
        if needle is not None and needle not in _normalize(name):
            continue
        results.append(func(opts))
    return results
