"""Parameter sweeps over the junction with a stable tabular schema.

One row per grid point: inputs, bulk and contact gaps, contact phases
and spectral scales, pair current, mode frequencies, commutator defects
and solver diagnostics.  Rendering is deterministic (17 significant
digits, LF endings) so reruns of the same config are byte-identical.
"""

import json
import math
from dataclasses import asdict, dataclass, fields, replace

import numpy as np

from .constants import NESS_CHANGE_TOL
from .equilibrium import BulkParams
from .ness import JunctionParams, solve_ness
from .observables import ccr_defect, goldstone_operators, josephson_current

CSV_COLUMNS = (
    "epsilon_I",
    "epsilon_II",
    "beta_I",
    "beta_II",
    "gamma",
    "phi_I",
    "phi_II",
    "lambda_I",
    "lambda_II",
    "lambda_t_I",
    "lambda_t_II",
    "phi_t_I",
    "phi_t_II",
    "mu_t_I",
    "mu_t_II",
    "current",
    "nu_t_I",
    "nu_t_II",
    "ccr_defect_I",
    "ccr_defect_II",
    "residual",
    "converged",
)

SWEEP_AXES = (
    "delta_phi",
    "gamma",
    "beta_I",
    "beta_II",
    "epsilon_I",
    "epsilon_II",
)

FORMATS = ("csv", "json")


@dataclass(frozen=True)
class SweepRow:
    epsilon_I: float
    epsilon_II: float
    beta_I: float
    beta_II: float
    gamma: float
    phi_I: float
    phi_II: float
    lambda_I: float
    lambda_II: float
    lambda_t_I: float
    lambda_t_II: float
    phi_t_I: float
    phi_t_II: float
    mu_t_I: float
    mu_t_II: float
    current: float
    nu_t_I: float
    nu_t_II: float
    ccr_defect_I: float
    ccr_defect_II: float
    residual: float
    converged: bool


@dataclass(frozen=True)
class RunConfig:
    """Everything one junction run or sweep needs.

    The sweep axis replaces the like-named fixed field at each grid
    point; ``delta_phi`` holds ``phi_I`` fixed and sets
    ``phi_II = phi_I - delta`` so the axis value is the bias
    phi_I - phi_II appearing in the current law.
    """

    epsilon_I: float = 0.3
    epsilon_II: float = 0.3
    beta_I: float = 1e4
    beta_II: float = 1e4
    gamma: float = 1e-3
    phi_I: float = 0.0
    phi_II: float = 0.0
    axis: str = "delta_phi"
    start: float = -math.pi / 2
    stop: float = math.pi / 2
    count: int = 33
    output: str | None = None
    format: str = "csv"
    damping: float = 0.5
    tolerance: float = NESS_CHANGE_TOL
    max_iter: int = 100_000
    seed_lambda: tuple | None = None
    seed_phi: tuple | None = None
    lattice_n: int = 2
    memory_cap: int | None = None

    def __post_init__(self):
        if self.axis not in SWEEP_AXES:
            raise ValueError(f"axis must be one of {SWEEP_AXES}, got {self.axis!r}")
        if self.format not in FORMATS:
            raise ValueError(f"format must be one of {FORMATS}, got {self.format!r}")
        if not (isinstance(self.count, int) and self.count >= 1):
            raise ValueError(f"count must be a positive integer, got {self.count!r}")


def config_from_mapping(mapping, base=None):
    """Build a RunConfig from a dict, e.g. a parsed JSON config file.

    Unknown keys are rejected; ``base`` supplies defaults for missing
    ones (command-line merging starts from the file config).
    """
    base = base if base is not None else RunConfig()
    known = {f.name for f in fields(RunConfig)}
    unknown = set(mapping) - known
    if unknown:
        raise ValueError(f"unknown config keys: {sorted(unknown)}")
    cleaned = dict(mapping)
    for key in ("seed_lambda", "seed_phi"):
        if cleaned.get(key) is not None:
            cleaned[key] = tuple(float(v) for v in np.atleast_1d(cleaned[key]))
    return replace(base, **cleaned)


def load_config(path):
    with open(path, "r", encoding="utf-8") as fh:
        data = json.load(fh)
    if not isinstance(data, dict):
        raise ValueError("config file must hold a single JSON object")
    return config_from_mapping(data)


def _seed_from_config(config):
    if config.seed_lambda is None and config.seed_phi is None:
        return None
    lams = config.seed_lambda if config.seed_lambda is not None else (0.0,)
    phis = config.seed_phi if config.seed_phi is not None else (0.0,)
    if len(lams) == 1:
        lams = (lams[0], lams[0])
    if len(phis) == 1:
        phis = (phis[0], phis[0])
    if len(lams) != 2 or len(phis) != 2:
        raise ValueError("seed_lambda / seed_phi take one or two values")
    return (
        lams[0] * complex(math.cos(phis[0]), math.sin(phis[0])),
        lams[1] * complex(math.cos(phis[1]), math.sin(phis[1])),
    )


def params_at(config, value):
    """Junction parameters at one grid value of the configured axis."""
    fixed = {
        "epsilon_I": config.epsilon_I,
        "epsilon_II": config.epsilon_II,
        "beta_I": config.beta_I,
        "beta_II": config.beta_II,
        "gamma": config.gamma,
        "phi_I": config.phi_I,
        "phi_II": config.phi_II,
    }
    if config.axis == "delta_phi":
        fixed["phi_II"] = fixed["phi_I"] - value
    else:
        fixed[config.axis] = value
    return JunctionParams(
        bulk_I=BulkParams(fixed["epsilon_I"], fixed["beta_I"], fixed["phi_I"]),
        bulk_II=BulkParams(fixed["epsilon_II"], fixed["beta_II"], fixed["phi_II"]),
        gamma=fixed["gamma"],
    )


def evaluate_point(params, damping=0.5, tolerance=NESS_CHANGE_TOL, max_iter=100_000, seed=None):
    """Full pipeline at one parameter point, rendered as a SweepRow."""
    sol = solve_ness(
        params, damping=damping, tol=tolerance, max_iter=max_iter, seed=seed
    )
    pair_i = goldstone_operators("I_b", sol)
    pair_ii = goldstone_operators("II_b", sol)
    return SweepRow(
        epsilon_I=params.bulk_I.epsilon,
        epsilon_II=params.bulk_II.epsilon,
        beta_I=params.bulk_I.beta,
        beta_II=params.bulk_II.beta,
        gamma=params.gamma,
        phi_I=params.bulk_I.phi,
        phi_II=params.bulk_II.phi,
        lambda_I=sol.lambda_bulk_I,
        lambda_II=sol.lambda_bulk_II,
        lambda_t_I=abs(sol.Lambda_b_I),
        lambda_t_II=abs(sol.Lambda_b_II),
        phi_t_I=float(np.angle(sol.Lambda_b_I)),
        phi_t_II=float(np.angle(sol.Lambda_b_II)),
        mu_t_I=sol.mu_t_I,
        mu_t_II=sol.mu_t_II,
        current=josephson_current(sol, params.gamma).j,
        nu_t_I=pair_i.frequency,
        nu_t_II=pair_ii.frequency,
        ccr_defect_I=ccr_defect(pair_i),
        ccr_defect_II=ccr_defect(pair_ii),
        residual=sol.residual,
        converged=sol.converged,
    )


def run_sweep(config):
    """Evaluate the configured grid, in order, one SweepRow per point."""
    grid = np.linspace(config.start, config.stop, config.count)
    seed = _seed_from_config(config)
    rows = []
    for value in grid:
        params = params_at(config, float(value))
        rows.append(
            evaluate_point(
                params,
                damping=config.damping,
                tolerance=config.tolerance,
                max_iter=config.max_iter,
                seed=seed,
            )
        )
    return rows


def _format_value(value):
    if isinstance(value, bool):
        return "true" if value else "false"
    return format(float(value), ".17g")


def render_csv(rows):
    lines = [",".join(CSV_COLUMNS)]
    for row in rows:
        data = asdict(row)
        lines.append(",".join(_format_value(data[col]) for col in CSV_COLUMNS))
    return "\n".join(lines) + "\n"


def render_json(rows):
    payload = []
    for row in rows:
        data = asdict(row)
        payload.append({col: data[col] for col in CSV_COLUMNS})
    return json.dumps(payload, indent=2) + "\n"


def render(rows, fmt):
    if fmt == "csv":
        return render_csv(rows)
    if fmt == "json":
        return render_json(rows)
    raise ValueError(f"format must be one of {FORMATS}, got {fmt!r}")
