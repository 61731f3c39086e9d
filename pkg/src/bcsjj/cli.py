"""Command-line front door.

Subcommands:

* ``gap``       solve the one-plate self-consistency equation
* ``ness``      solve one junction point and dump the solution
* ``sweep``     tabulate a parameter sweep as CSV or JSON
* ``check``     run the invariant suite on the built-in grid
* ``finite-n``  small-lattice identities (exact commutator, product current)

Exit codes: 0 success, 1 failed checks or defects over threshold,
2 usage error, 3 solver non-convergence, 4 resource limit exceeded.
"""

import argparse
import json
import math
import sys
from dataclasses import asdict

from . import lattice
from .checks import CheckOptions, run_checks
from .equilibrium import BulkParams, critical_beta, solve_gap
from .lattice import LatticeSpec, ResourceLimitError
from .ness import JunctionParams, solve_ness, verify_steady
from .sweep import (
    config_from_mapping,
    evaluate_point,
    render,
    run_sweep,
    _seed_from_config,
)

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2
EXIT_SOLVER = 3
EXIT_RESOURCE = 4


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="bcsjj",
        description="Two-plate BCS junction: gap equation, steady states, "
        "Josephson current, boundary mode spectra, small-lattice oracles.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", metavar="PATH", help="JSON run configuration; flags override it")
    common.add_argument("--output", metavar="PATH", help="write the result here instead of stdout")
    common.add_argument("--format", dest="fmt", choices=("csv", "json"), help="output format")
    common.add_argument("--tolerance", type=float, help="solver iteration tolerance")
    common.add_argument("--max-iter", type=int, help="solver iteration cap")
    common.add_argument("--damping", type=float, help="fixed-point damping factor in (0, 1]")
    common.add_argument(
        "--seed-lambda", type=float, nargs="+", metavar="LAM",
        help="starting order-parameter moduli (one shared or two values)",
    )
    common.add_argument(
        "--seed-phi", type=float, nargs="+", metavar="PHI",
        help="starting order-parameter phases (one shared or two values)",
    )
    common.add_argument("--memory-cap", type=int, metavar="BYTES", help="lattice memory budget")
    common.add_argument("--only", metavar="FILTER", help="check-name fragment to select")

    point = argparse.ArgumentParser(add_help=False)
    point.add_argument("--epsilon-i", dest="epsilon_I", type=float, help="plate I level splitting")
    point.add_argument("--epsilon-ii", dest="epsilon_II", type=float, help="plate II level splitting")
    point.add_argument("--beta-i", dest="beta_I", type=float, help="plate I inverse temperature")
    point.add_argument("--beta-ii", dest="beta_II", type=float, help="plate II inverse temperature")
    point.add_argument("--gamma", type=float, help="contact coupling")
    point.add_argument("--phi-i", dest="phi_I", type=float, help="plate I phase (radians)")
    point.add_argument("--phi-ii", dest="phi_II", type=float, help="plate II phase (radians)")

    gap = sub.add_parser("gap", parents=[common], help="one-plate gap equation")
    gap.add_argument("--epsilon", type=float, required=True, help="level splitting")
    gap.add_argument("--beta", type=float, required=True, help="inverse temperature")
    gap.add_argument("--phi", type=float, default=0.0, help="order-parameter phase (radians)")

    sub.add_parser("ness", parents=[common, point], help="solve one junction point")

    swp = sub.add_parser("sweep", parents=[common, point], help="tabulate a parameter sweep")
    swp.add_argument("--axis", help="swept field (delta_phi, gamma, beta_I, beta_II, epsilon_I, epsilon_II)")
    swp.add_argument("--start", type=float, help="first grid value")
    swp.add_argument("--stop", type=float, help="last grid value")
    swp.add_argument("--count", type=int, help="number of grid points")

    sub.add_parser("check", parents=[common], help="run the invariant suite")

    fin = sub.add_parser("finite-n", parents=[common, point], help="small-lattice identities")
    fin.add_argument("--n", type=int, help="plate edge length (N x N sites per plate)")

    return parser


def _emit(text, output):
    if output:
        with open(output, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


_POINT_KEYS = (
    "epsilon_I", "epsilon_II", "beta_I", "beta_II", "gamma", "phi_I", "phi_II",
)
_SWEEP_KEYS = ("axis", "start", "stop", "count")


def _merged_config(args, default_format=None):
    """File config (if any) with command-line overrides applied.

    ``default_format`` fills in when neither a flag nor the file picks
    one; the RunConfig fallback (csv) applies otherwise.
    """
    mapping = {}
    if args.config:
        with open(args.config, "r", encoding="utf-8") as fh:
            data = json.load(fh)
        if not isinstance(data, dict):
            raise ValueError("config file must hold a single JSON object")
        mapping.update(data)
    for key in _POINT_KEYS:
        value = getattr(args, key, None)
        if value is not None:
            mapping[key] = value
    for key in _SWEEP_KEYS:
        value = getattr(args, key, None)
        if value is not None:
            mapping[key] = value
    overrides = {
        "output": args.output,
        "format": args.fmt,
        "damping": args.damping,
        "tolerance": args.tolerance,
        "max_iter": args.max_iter,
        "seed_lambda": tuple(args.seed_lambda) if args.seed_lambda else None,
        "seed_phi": tuple(args.seed_phi) if args.seed_phi else None,
        "lattice_n": getattr(args, "n", None),
        "memory_cap": args.memory_cap,
    }
    for key, value in overrides.items():
        if value is not None:
            mapping[key] = value
    if default_format is not None and "format" not in mapping:
        mapping["format"] = default_format
    return config_from_mapping(mapping)


def _junction_from_config(config):
    return JunctionParams(
        bulk_I=BulkParams(config.epsilon_I, config.beta_I, config.phi_I),
        bulk_II=BulkParams(config.epsilon_II, config.beta_II, config.phi_II),
        gamma=config.gamma,
    )


def cmd_gap(args):
    params = BulkParams(args.epsilon, args.beta, args.phi)
    sol = solve_gap(params)
    criterion = math.tanh(args.beta * args.epsilon) - 2.0 * args.epsilon
    beta_c = critical_beta(args.epsilon)
    payload = {
        "epsilon": args.epsilon,
        "beta": args.beta,
        "phi": args.phi,
        "criterion": criterion,
        "critical_beta": beta_c if math.isfinite(beta_c) else None,
        "normal_branch": {"lambda": 0.0, "mu": args.epsilon},
        "superconducting_branch": (
            {"lambda": sol.lam, "mu": sol.mu} if sol.superconducting else None
        ),
        "fixed_point_defect": sol.residual,
    }
    if args.fmt == "json":
        text = json.dumps(payload, indent=2) + "\n"
    elif args.fmt == "csv":
        raise ValueError("gap reports have no CSV form; use --format json")
    else:
        lines = [
            f"epsilon = {args.epsilon:.17g}, beta = {args.beta:.17g}, phi = {args.phi:.17g}",
            f"branch criterion tanh(beta*epsilon) - 2*epsilon = {criterion:.17g}",
            "critical beta = "
            + (f"{beta_c:.17g}" if math.isfinite(beta_c) else "none (epsilon >= 1/2)"),
            f"normal branch:          lambda = 0, mu = {args.epsilon:.17g}",
        ]
        if sol.superconducting:
            lines.append(
                f"superconducting branch: lambda = {sol.lam:.17g}, mu = {sol.mu:.17g}"
            )
            lines.append(f"fixed-point defect = {sol.residual:.3e}")
        else:
            lines.append("superconducting branch: absent")
        text = "\n".join(lines) + "\n"
    _emit(text, args.output)
    return EXIT_OK


def cmd_ness(args):
    config = _merged_config(args, default_format="json")
    params = _junction_from_config(config)
    seed = _seed_from_config(config)
    row = evaluate_point(
        params,
        damping=config.damping,
        tolerance=config.tolerance,
        max_iter=config.max_iter,
        seed=seed,
    )
    if config.format == "csv":
        text = render([row], "csv")
    else:
        sol = solve_ness(
            params,
            damping=config.damping,
            tol=config.tolerance,
            max_iter=config.max_iter,
            seed=seed,
        )
        payload = asdict(row)
        payload["iterations"] = sol.iterations
        payload["steady_residual"] = verify_steady(sol)
        text = json.dumps(payload, indent=2) + "\n"
    _emit(text, config.output)
    return EXIT_OK if row.converged else EXIT_SOLVER


def cmd_sweep(args):
    config = _merged_config(args)
    rows = run_sweep(config)
    _emit(render(rows, config.format), config.output)
    return EXIT_OK if all(row.converged for row in rows) else EXIT_SOLVER


def cmd_check(args):
    opts = CheckOptions(
        damping=args.damping if args.damping is not None else 0.5,
        tolerance=args.tolerance if args.tolerance is not None else CheckOptions().tolerance,
        max_iter=args.max_iter if args.max_iter is not None else 100_000,
        memory_cap=args.memory_cap,
    )
    results = run_checks(only=args.only, opts=opts)
    if not results:
        raise ValueError(f"no checks match --only {args.only!r}")
    if args.fmt == "json":
        text = json.dumps([asdict(r) for r in results], indent=2) + "\n"
    else:
        lines = []
        for r in results:
            status = "PASS" if r.passed else "FAIL"
            note = f"  [{r.note}]" if r.note else ""
            lines.append(
                f"{status} {r.name}: measured {r.measured:.3e}"
                f" (threshold {r.threshold:.3e}){note}"
            )
        failed = sum(1 for r in results if not r.passed)
        lines.append(f"{len(results)} checks, {len(results) - failed} passed, {failed} failed")
        text = "\n".join(lines) + "\n"
    _emit(text, args.output)
    return EXIT_OK if all(r.passed for r in results) else EXIT_CHECK_FAILED


def cmd_finite_n(args):
    config = _merged_config(args)
    params = _junction_from_config(config)
    spec = LatticeSpec(config.lattice_n, memory_cap=config.memory_cap)
    hamiltonian = lattice.build_hamiltonian(spec, params)
    charge = lattice.build_relative_number(spec)
    current = lattice.build_current(spec, params.gamma)

    commutator_defect = float(
        abs(1j * (hamiltonian @ charge - charge @ hamiltonian) - current).max()
    )
    decoupled = lattice.build_hamiltonian(
        spec, JunctionParams(params.bulk_I, params.bulk_II, 0.0)
    )
    conservation_defect = float(abs(decoupled @ charge - charge @ decoupled).max())

    bulk_i = solve_gap(params.bulk_I)
    bulk_ii = solve_gap(params.bulk_II)
    states = [bulk_i.rho] * spec.sites_per_plate + [bulk_ii.rho] * spec.sites_per_plate
    measured = lattice.product_state_expectation(current, states).real / spec.n
    expected = -4.0 * params.gamma * bulk_i.lam * bulk_ii.lam * math.sin(params.delta_phi)
    current_defect = abs(measured - expected)

    payload = {
        "n": spec.n,
        "sites": spec.n_sites,
        "dimension": spec.dim,
        "commutator_defect": commutator_defect,
        "bulk_conservation_defect": conservation_defect,
        "product_current_per_site": measured,
        "mean_field_current": expected,
        "current_defect": current_defect,
    }
    ok = commutator_defect < 1e-13 and conservation_defect < 1e-13 and current_defect < 1e-12
    if args.fmt == "json":
        payload["passed"] = ok
        text = json.dumps(payload, indent=2) + "\n"
    else:
        lines = [
            f"lattice: {spec.n}x{spec.n} per plate, {spec.n_sites} sites, dimension {spec.dim}",
            f"i[H, Q] vs J entrywise defect      = {commutator_defect:.3e}",
            f"[H(gamma=0), Q] entrywise defect   = {conservation_defect:.3e}",
            f"product-state current per site     = {measured:.17g}",
            f"mean-field sine-law current        = {expected:.17g}",
            f"current defect                     = {current_defect:.3e}",
            "PASS" if ok else "FAIL",
        ]
        text = "\n".join(lines) + "\n"
    _emit(text, config.output)
    return EXIT_OK if ok else EXIT_CHECK_FAILED


_DISPATCH = {
    "gap": cmd_gap,
    "ness": cmd_ness,
    "sweep": cmd_sweep,
    "check": cmd_check,
    "finite-n": cmd_finite_n,
}


def main(argv=None):
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        code = exc.code
        return code if isinstance(code, int) else EXIT_USAGE
    try:
        return _DISPATCH[args.command](args)
    except ResourceLimitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
