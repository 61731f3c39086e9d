"""Exact small-lattice realization of the coupled plates.

Each plate is an N x N grid of two-level sites with all-to-all pairing
inside the plate; the two row-1 lines face each other across the contact
and are coupled by the tunneling term.  On 2 N^2 spins everything is a
sparse matrix on a 4^(N^2)-dimensional space, so the mean-field results
can be checked against literal operator algebra:

    H = sum_plates [ eps * sum_x sigma_z(x) - (1/N) S_plus S_minus ]
        - (gamma/N) (B_plus_I B_minus_II + B_minus_I B_plus_II)
    Q = (pairs on plate I) - (pairs on plate II)
    J = i [H, Q] = -(2 i gamma / N)(B_minus_I B_plus_II - B_plus_I B_minus_II)

with S the plate-summed and B the contact-row-summed ladder operators.
Expectations in product states contract site by site over the sparse
entries, never building the 4^(N^2) density matrix.
"""

import heapq
import math
from dataclasses import dataclass

import numpy as np
import scipy.sparse as sparse
from scipy.sparse.linalg import expm_multiply

from . import spin
from .constants import KRYLOV_TOL

DEFAULT_DIM_CAP = 2**20
DENSE_EVOLUTION_DIM = 2**10
_MAX_PRODUCT_TERMS = 4096


class ResourceLimitError(RuntimeError):
    """Requested lattice exceeds the configured dimension or memory budget."""


@dataclass(frozen=True)
class LatticeSpec:
    """Geometry and resource budget of the finite two-plate lattice."""

    n: int
    dim_cap: int = DEFAULT_DIM_CAP
    memory_cap: int | None = None

    def __post_init__(self):
        if not (isinstance(self.n, int) and self.n >= 1):
            raise ValueError(f"n must be a positive integer, got {self.n!r}")
        if self.dim > self.dim_cap:
            raise ResourceLimitError(
                f"Hilbert dimension 2**{2 * self.n**2} exceeds the cap "
                f"{self.dim_cap}; raise dim_cap explicitly to go bigger"
            )
        if self.memory_cap is not None and self.estimated_bytes > self.memory_cap:
            raise ResourceLimitError(
                f"estimated operator storage {self.estimated_bytes} B exceeds "
                f"the memory cap {self.memory_cap} B"
            )

    @property
    def sites_per_plate(self):
        return self.n * self.n

    @property
    def n_sites(self):
        return 2 * self.n * self.n

    @property
    def dim(self):
        return 1 << self.n_sites

    @property
    def estimated_bytes(self):
        """Rough CSR storage for the three standard operators."""
        n2 = self.n * self.n
        nnz_h = self.dim * (1 + n2 * (n2 - 1) // 2 + n2 // 2 + 1)
        return 48 * nnz_h

    def plate_sites(self, plate):
        base = 0 if plate == 0 else self.sites_per_plate
        return range(base, base + self.sites_per_plate)

    def boundary_sites(self, plate):
        """Row-1 sites of the plate, the ones facing the contact."""
        base = 0 if plate == 0 else self.sites_per_plate
        return range(base, base + self.n)


def _site_operator(spec, site, local):
    left = sparse.identity(1 << site, format="csr", dtype=complex)
    right = sparse.identity(1 << (spec.n_sites - site - 1), format="csr", dtype=complex)
    return sparse.kron(
        sparse.kron(left, sparse.csr_matrix(local)), right, format="csr"
    )


def _summed(spec, sites, local):
    total = None
    for site in sites:
        term = _site_operator(spec, site, local)
        total = term if total is None else total + term
    return total


def build_hamiltonian(spec, params):
    """Full lattice Hamiltonian for the given junction parameters."""
    n = spec.n
    total = sparse.csr_matrix((spec.dim, spec.dim), dtype=complex)
    for plate, bulk in ((0, params.bulk_I), (1, params.bulk_II)):
        sites = spec.plate_sites(plate)
        sz = _summed(spec, sites, spin.SIGMA_Z)
        raise_all = _summed(spec, sites, spin.SIGMA_PLUS)
        total = total + bulk.epsilon * sz - (raise_all @ raise_all.conj().T) / n
    b_plus_i = _summed(spec, spec.boundary_sites(0), spin.SIGMA_PLUS)
    b_plus_ii = _summed(spec, spec.boundary_sites(1), spin.SIGMA_PLUS)
    b_minus_i = b_plus_i.conj().T.tocsr()
    b_minus_ii = b_plus_ii.conj().T.tocsr()
    total = total - (params.gamma / n) * (
        b_plus_i @ b_minus_ii + b_minus_i @ b_plus_ii
    )
    return total.tocsr()


def build_relative_number(spec):
    """Pair-number imbalance between the plates."""
    number = spin.SIGMA_PLUS @ spin.SIGMA_MINUS
    return (
        _summed(spec, spec.plate_sites(0), number)
        - _summed(spec, spec.plate_sites(1), number)
    ).tocsr()


def build_current(spec, gamma):
    """Pair current operator J = i [H, Q], in closed form."""
    b_plus_i = _summed(spec, spec.boundary_sites(0), spin.SIGMA_PLUS)
    b_plus_ii = _summed(spec, spec.boundary_sites(1), spin.SIGMA_PLUS)
    b_minus_i = b_plus_i.conj().T.tocsr()
    b_minus_ii = b_plus_ii.conj().T.tocsr()
    return (
        (-2j * gamma / spec.n) * (b_minus_i @ b_plus_ii - b_plus_i @ b_minus_ii)
    ).tocsr()


def product_state_expectation(op, site_states):
    """Tr(rho op) for rho a tensor product of one-site density matrices.

    Contracts over the sparse entries of ``op`` only: each entry
    op[r, c] picks up rho[c, r] = prod_x rho_x[c_x, r_x] from the site
    bit patterns, so the cost is O(nnz * sites) and nothing of size
    dim^2 is ever built.  Site 0 is the most significant bit (kron
    order).
    """
    op = sparse.coo_matrix(op)
    dim = op.shape[0]
    n_sites = dim.bit_length() - 1
    if (1 << n_sites) != dim or op.shape[0] != op.shape[1]:
        raise ValueError(f"operator shape {op.shape} is not a spin-chain square")
    if len(site_states) != n_sites:
        raise ValueError(
            f"got {len(site_states)} site states for {n_sites} sites"
        )
    acc = op.data.astype(complex, copy=True)
    rows = op.row.astype(np.int64)
    cols = op.col.astype(np.int64)
    for site in range(n_sites):
        shift = n_sites - 1 - site
        rb = (rows >> shift) & 1
        cb = (cols >> shift) & 1
        flat = np.asarray(site_states[site], dtype=complex).reshape(4)
        acc *= flat[cb * 2 + rb]
    return complex(acc.sum())


def _dominant_product_terms(site_states, tol, cap=_MAX_PRODUCT_TERMS):
    """Product eigenstate expansion of a mixed product state, best first.

    Yields (weight, statevector) until the neglected mass drops below
    ``tol``.  For nearly pure site states (large beta) one term suffices;
    a genuinely mixed state on many sites trips the term cap instead of
    silently truncating.
    """
    probs = []
    vectors = []
    for rho in site_states:
        w, v = np.linalg.eigh(np.asarray(rho, dtype=complex))
        order = np.argsort(w)[::-1]
        probs.append(np.clip(w[order], 0.0, None))
        vectors.append(v[:, order])

    n_sites = len(site_states)

    def weight(choice):
        total = 1.0
        for x, c in zip(range(n_sites), choice):
            total *= probs[x][c]
        return total

    start = (0,) * n_sites
    heap = [(-weight(start), start)]
    seen = {start}
    mass = 0.0
    out = []
    while heap and mass < 1.0 - tol:
        if len(out) >= cap:
            raise ResourceLimitError(
                "product state too mixed: the eigenstate expansion needs "
                f"more than {cap} terms to reach mass 1 - {tol}"
            )
        neg_w, choice = heapq.heappop(heap)
        w = -neg_w
        if w <= 0.0:
            break
        vec = vectors[0][:, choice[0]]
        for x in range(1, n_sites):
            vec = np.kron(vec, vectors[x][:, choice[x]])
        out.append((w, vec))
        mass += w
        for x in range(n_sites):
            if choice[x] == 0:
                nxt = choice[:x] + (1,) + choice[x + 1 :]
                if nxt not in seen:
                    seen.add(nxt)
                    heapq.heappush(heap, (-weight(nxt), nxt))
    return out


def time_evolve_expectation(op, hamiltonian, site_states, t, dense_dim=DENSE_EVOLUTION_DIM):
    """Tr(rho exp(itH) op exp(-itH)) for a product state rho.

    Spectral (dense) evolution up to ``dense_dim``; above that the state
    is expanded into dominant product eigenstates and each is propagated
    with a Krylov exponential at tolerance ``KRYLOV_TOL``.
    """
    dim = hamiltonian.shape[0]
    if dim <= dense_dim:
        h_dense = np.asarray(
            hamiltonian.toarray() if sparse.issparse(hamiltonian) else hamiltonian
        )
        energies, basis = np.linalg.eigh(h_dense)
        propagator = (basis * np.exp(1j * t * energies)) @ basis.conj().T
        op_dense = np.asarray(op.toarray() if sparse.issparse(op) else op)
        evolved = propagator @ op_dense @ propagator.conj().T
        rho = np.ones((1, 1), dtype=complex)
        for state in site_states:
            rho = np.kron(rho, np.asarray(state, dtype=complex))
        return complex(np.trace(rho @ evolved))

    terms = _dominant_product_terms(site_states, KRYLOV_TOL)
    h_csr = sparse.csr_matrix(hamiltonian)
    op_csr = sparse.csr_matrix(op)
    total = 0.0 + 0.0j
    for w, vec in terms:
        moved = expm_multiply(-1j * t * h_csr, vec)
        total += w * np.vdot(moved, op_csr @ moved)
    return complex(total)
