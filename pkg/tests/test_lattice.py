"""Small-lattice oracle: exact operator identities and contractions."""

import math

import numpy as np
import pytest
from scipy import sparse

from bcsjj.equilibrium import BulkParams, solve_gap
from bcsjj.lattice import (
    DENSE_EVOLUTION_DIM,
    LatticeSpec,
    ResourceLimitError,
    build_current,
    build_hamiltonian,
    build_relative_number,
    product_state_expectation,
    time_evolve_expectation,
)
from bcsjj.ness import JunctionParams

SIGMA_PLUS = np.array([[0.0, 1.0], [0.0, 0.0]], dtype=complex)


def junction(gamma=1e-3, delta=0.3):
    return JunctionParams(
        bulk_I=BulkParams(0.3, 1e4, delta),
        bulk_II=BulkParams(0.3, 1e4, 0.0),
        gamma=gamma,
    )


def random_site_state(rng):
    raw = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
    rho = raw @ raw.conj().T
    return rho / np.trace(rho).real


def dense_product_state(site_states):
    rho = np.array([[1.0]], dtype=complex)
    for state in site_states:
        rho = np.kron(rho, state)
    return rho


def test_geometry():
    spec = LatticeSpec(2)
    assert spec.sites_per_plate == 4
    assert spec.n_sites == 8
    assert spec.dim == 256
    assert list(spec.plate_sites(0)) == [0, 1, 2, 3]
    assert list(spec.plate_sites(1)) == [4, 5, 6, 7]
    assert list(spec.boundary_sites(0)) == [0, 1]
    assert list(spec.boundary_sites(1)) == [4, 5]


def test_dimension_cap():
    LatticeSpec(3)  # 2^18 fits under the default cap
    with pytest.raises(ResourceLimitError):
        LatticeSpec(4)  # 2^32 does not
    with pytest.raises(ResourceLimitError):
        LatticeSpec(2, dim_cap=255)


def test_memory_cap():
    with pytest.raises(ResourceLimitError):
        LatticeSpec(2, memory_cap=100)
    LatticeSpec(1, memory_cap=100_000)


def test_spec_validation():
    with pytest.raises(ValueError):
        LatticeSpec(0)
    with pytest.raises(ValueError):
        LatticeSpec(2.5)


def test_operators_hermitian():
    spec = LatticeSpec(2)
    p = junction()
    for op in (
        build_hamiltonian(spec, p),
        build_relative_number(spec),
        build_current(spec, p.gamma),
    ):
        assert abs(op - op.conj().T).max() < 1e-15


def test_commutator_identity():
    """The current operator is exactly the charge-transfer rate."""
    for n in (1, 2):
        spec = LatticeSpec(n)
        p = junction()
        h = build_hamiltonian(spec, p)
        q = build_relative_number(spec)
        j = build_current(spec, p.gamma)
        defect = abs(1j * (h @ q - q @ h) - j).max()
        assert defect < 1e-13, f"n={n}: defect {defect:.2e}"


def test_decoupled_charge_conserved():
    for n in (1, 2):
        spec = LatticeSpec(n)
        h = build_hamiltonian(spec, junction(gamma=0.0))
        q = build_relative_number(spec)
        assert abs(h @ q - q @ h).max() < 1e-13


def test_product_expectation_identity():
    rng = np.random.default_rng(29)
    spec = LatticeSpec(1)
    eye = sparse.identity(spec.dim, format="csr", dtype=complex)
    states = [random_site_state(rng) for _ in range(spec.n_sites)]
    assert abs(product_state_expectation(eye, states) - 1.0) < 1e-13


def test_product_expectation_matches_dense_kron():
    rng = np.random.default_rng(31)
    spec = LatticeSpec(1)
    for _ in range(20):
        states = [random_site_state(rng) for _ in range(spec.n_sites)]
        dense = rng.normal(size=(spec.dim, spec.dim)) + 1j * rng.normal(
            size=(spec.dim, spec.dim)
        )
        op = sparse.csr_matrix(dense)
        oracle = np.trace(dense_product_state(states) @ dense)
        assert abs(product_state_expectation(op, states) - oracle) < 1e-12


def test_relative_number_additivity():
    rng = np.random.default_rng(37)
    spec = LatticeSpec(2)
    q = build_relative_number(spec)
    rho_i = random_site_state(rng)
    rho_ii = random_site_state(rng)
    states = [rho_i] * spec.sites_per_plate + [rho_ii] * spec.sites_per_plate
    number = SIGMA_PLUS @ SIGMA_PLUS.conj().T
    per_site = np.trace(rho_i @ number) - np.trace(rho_ii @ number)
    expected = spec.sites_per_plate * per_site
    assert abs(product_state_expectation(q, states) - expected) < 1e-12


def test_product_current_matches_mean_field():
    for n in (1, 2):
        for gamma, delta in ((1e-3, 0.3), (1e-2, -0.7)):
            spec = LatticeSpec(n)
            p = junction(gamma=gamma, delta=delta)
            bulk_i = solve_gap(p.bulk_I)
            bulk_ii = solve_gap(p.bulk_II)
            states = [bulk_i.rho] * spec.sites_per_plate + [
                bulk_ii.rho
            ] * spec.sites_per_plate
            j = build_current(spec, gamma)
            measured = product_state_expectation(j, states).real / n
            expected = -4.0 * gamma * bulk_i.lam * bulk_ii.lam * math.sin(delta)
            assert abs(measured - expected) < 1e-12


def test_time_evolution_at_zero_matches_static():
    rng = np.random.default_rng(41)
    spec = LatticeSpec(1)
    p = junction(gamma=1e-2)
    h = build_hamiltonian(spec, p)
    q = build_relative_number(spec)
    states = [random_site_state(rng) for _ in range(spec.n_sites)]
    static = product_state_expectation(q, states)
    evolved = time_evolve_expectation(q, h, states, 0.0)
    assert abs(static - evolved) < 1e-12


def test_decoupled_evolution_conserves_charge():
    spec = LatticeSpec(1)
    p = junction(gamma=0.0)
    h = build_hamiltonian(spec, p)
    q = build_relative_number(spec)
    bulk_i = solve_gap(p.bulk_I)
    bulk_ii = solve_gap(p.bulk_II)
    states = [bulk_i.rho, bulk_ii.rho]
    start = time_evolve_expectation(q, h, states, 0.0)
    for t in (0.5, 2.0, 7.3):
        drift = time_evolve_expectation(q, h, states, t) - start
        assert abs(drift) < 1e-10


def test_krylov_matches_dense_propagator():
    rng = np.random.default_rng(43)
    spec = LatticeSpec(1)
    p = junction(gamma=1e-2)
    h = build_hamiltonian(spec, p)
    q = build_relative_number(spec)
    j = build_current(spec, p.gamma)
    states = [random_site_state(rng) for _ in range(spec.n_sites)]
    for t in (0.3, 1.7):
        for op in (q, j):
            dense = time_evolve_expectation(op, h, states, t)
            krylov = time_evolve_expectation(op, h, states, t, dense_dim=1)
            assert abs(dense - krylov) < 1e-9, f"t={t}: {dense} vs {krylov}"


def test_evolution_matches_heisenberg_oracle():
    """Cross-check against direct dense exponentiation at dim 4."""
    from scipy.linalg import expm

    rng = np.random.default_rng(47)
    spec = LatticeSpec(1)
    p = junction(gamma=1e-2, delta=0.9)
    h = build_hamiltonian(spec, p).toarray()
    q = build_relative_number(spec).toarray()
    states = [random_site_state(rng) for _ in range(spec.n_sites)]
    rho = dense_product_state(states)
    for t in (0.4, 3.1):
        u = expm(1j * t * h)
        oracle = np.trace(rho @ (u @ q @ u.conj().T))
        got = time_evolve_expectation(
            sparse.csr_matrix(q), sparse.csr_matrix(h), states, t
        )
        assert abs(got - oracle) < 1e-10


def test_default_dense_threshold_sane():
    assert DENSE_EVOLUTION_DIM >= 4
