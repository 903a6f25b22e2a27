"""Exact dense operators for desk-scale instances.

Everything here is brute force on the full labelled Hilbert space: the
kinetic term is conjugated DFT blocks with folded momenta, the potential is
a coincidence-counting diagonal, and the antisymmetrizer is the literal
signed sum over particle permutations. These are the oracles the circuit
models are checked against, so they deliberately avoid clever shortcuts.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from ..params import SystemSpec, kinetic_coefficient
from .basis import single_particle_dim, total_dim

DESK_DIM_LIMIT = 4096

_HERM_TOL = 1e-12


@dataclass(frozen=True)
class DenseOperator:
    """A dense matrix checked to be Hermitian at construction."""

    matrix: np.ndarray

    def __post_init__(self):
        mat = self.matrix
        if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
            raise ValueError("operator must be a square matrix")
        scale = max(1.0, float(np.abs(mat).max()))
        if np.abs(mat - mat.conj().T).max() > _HERM_TOL * scale:
            raise ValueError("operator is not Hermitian within tolerance")

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]


def _check_dim(spec: SystemSpec) -> int:
    dim = total_dim(spec)
    if dim > DESK_DIM_LIMIT:
        raise ValueError(
            f"desk instance dimension {dim} exceeds the limit {DESK_DIM_LIMIT}"
        )
    if spec.eta < 1:
        raise ValueError("desk instances need at least one particle")
    return dim


def dft_matrix(M: int) -> np.ndarray:
    """Unitary DFT, F[j, k] = exp(2 pi i j k / M) / sqrt(M)."""
    j = np.arange(M)
    return np.exp(2j * np.pi * np.outer(j, j) / M) / math.sqrt(M)


def folded_momenta(M: int) -> np.ndarray:
    """Signed momenta: p for p < M/2, p - M otherwise."""
    p = np.arange(M)
    return np.where(p <= M // 2 - 1, p, p - M)


def kinetic_axis_matrix(spec: SystemSpec) -> np.ndarray:
    """Single-axis kinetic block, F^dag diag(K q^2) F, in position basis."""
    M = spec.lattice.M
    K = kinetic_coefficient(spec)
    F = dft_matrix(M)
    q = folded_momenta(M)
    T = F.conj().T @ np.diag(K * q.astype(float) ** 2) @ F
    T = 0.5 * (T + T.conj().T)
    # the momentum symbol is even, so the position-space block is real
    return np.ascontiguousarray(T.real)


def _particle_labels(spec: SystemSpec) -> np.ndarray:
    """(dim, eta) array of single-particle labels, particle 0 first."""
    dim = total_dim(spec)
    omega = single_particle_dim(spec.lattice)
    idx = np.arange(dim)
    labels = np.empty((dim, spec.eta), dtype=np.int64)
    for p in range(spec.eta):
        labels[:, spec.eta - 1 - p] = (idx // omega ** p) % omega
    return labels


def build_exact_T(spec: SystemSpec) -> DenseOperator:
    """Kinetic operator on the full labelled space."""
    _check_dim(spec)
    d, M = spec.lattice.d, spec.lattice.M
    omega = single_particle_dim(spec.lattice)
    T_ax = kinetic_axis_matrix(spec)
    # single-particle kinetic: sum over axes, identity on spin and isospin
    T1 = np.zeros((omega, omega))
    for a in range(d):
        left = M ** a
        right = M ** (d - 1 - a) * 4
        T1 += np.kron(np.kron(np.eye(left), T_ax.real), np.eye(right))
    total = np.zeros((total_dim(spec),) * 2)
    for p in range(spec.eta):
        left = omega ** p
        right = omega ** (spec.eta - 1 - p)
        total += np.kron(np.kron(np.eye(left), T1), np.eye(right))
    return DenseOperator(total)


def occupancy_lambdas(spec: SystemSpec) -> np.ndarray:
    """(dim, eta) array: for each basis state, the number of other
    particles sharing particle p's lattice site."""
    labels = _particle_labels(spec)
    sites = labels // 4
    lam = np.zeros(sites.shape, dtype=np.int64)
    for p in range(spec.eta):
        for q in range(spec.eta):
            if p != q:
                lam[:, p] += sites[:, p] == sites[:, q]
    return lam


def potential_diagonal(spec: SystemSpec, pairs: bool = True, triples: bool = True) -> np.ndarray:
    """Diagonal of the contact potential: C per coincident pair plus G per
    coincident triple, restricted to the requested pieces."""
    _check_dim(spec)
    sites = _particle_labels(spec) // 4
    dim = sites.shape[0]
    diag = np.zeros(dim)
    if pairs:
        for p, q in itertools.combinations(range(spec.eta), 2):
            diag += spec.params.C * (sites[:, p] == sites[:, q])
    if triples:
        for p, q, r in itertools.combinations(range(spec.eta), 3):
            same = (sites[:, p] == sites[:, q]) & (sites[:, q] == sites[:, r])
            diag += spec.params.G * same
    return diag


def build_exact_V(spec: SystemSpec, pairs: bool = True, triples: bool = True) -> DenseOperator:
    return DenseOperator(np.diag(potential_diagonal(spec, pairs, triples)))


def build_exact_H(spec: SystemSpec) -> DenseOperator:
    """Full Hamiltonian T + V on the labelled desk space."""
    H = build_exact_T(spec).matrix + np.diag(potential_diagonal(spec))
    return DenseOperator(H)


def _parity(perm) -> int:
    inversions = sum(
        1 for i in range(len(perm)) for j in range(i + 1, len(perm)) if perm[i] > perm[j]
    )
    return -1 if inversions % 2 else 1


_ANTISYM_CACHE: dict = {}


def antisymmetrizer(spec: SystemSpec) -> np.ndarray:
    """Projector onto the fermionic subspace, built as the explicit signed
    sum over particle permutations. Cached per (eta, d, m)."""
    key = (spec.eta, spec.lattice.d, spec.lattice.m)
    if key in _ANTISYM_CACHE:
        return _ANTISYM_CACHE[key]
    dim = _check_dim(spec)
    omega = single_particle_dim(spec.lattice)
    labels = _particle_labels(spec)
    weights = omega ** np.arange(spec.eta - 1, -1, -1, dtype=np.int64)
    proj = np.zeros((dim, dim))
    order = math.factorial(spec.eta)
    for perm in itertools.permutations(range(spec.eta)):
        images = labels[:, list(perm)] @ weights
        proj[images, np.arange(dim)] += _parity(perm) / order
    _ANTISYM_CACHE[key] = proj
    return proj


def slater_basis(spec: SystemSpec) -> np.ndarray:
    """Orthonormal columns spanning the antisymmetric subspace: one
    normalized determinant per ascending combination of labels."""
    dim = _check_dim(spec)
    omega = single_particle_dim(spec.lattice)
    weights = omega ** np.arange(spec.eta - 1, -1, -1, dtype=np.int64)
    norm = 1.0 / math.sqrt(math.factorial(spec.eta))
    combos = list(itertools.combinations(range(omega), spec.eta))
    S = np.zeros((dim, len(combos)))
    for col, combo in enumerate(combos):
        for perm in itertools.permutations(range(spec.eta)):
            index = int(np.dot([combo[p] for p in perm], weights))
            S[index, col] += _parity(perm) * norm
    return S


def _spectral_norm(A: np.ndarray) -> float:
    scale = float(np.abs(A).max(initial=0.0))
    if scale == 0.0:
        return 0.0
    if np.abs(A - A.conj().T).max() <= _HERM_TOL * max(1.0, scale):
        return float(np.abs(np.linalg.eigvalsh(A)).max())
    if np.abs(A + A.conj().T).max() <= _HERM_TOL * max(1.0, scale):
        return float(np.abs(np.linalg.eigvalsh(1j * A)).max())
    return float(np.linalg.norm(A, 2))


def seminorm_oracle(O, spec: SystemSpec) -> float:
    """Spectral norm of the operator compressed to the antisymmetric
    subspace. Small instances sandwich with the explicit projector; larger
    ones compress through the determinant basis."""
    mat = O.matrix if isinstance(O, DenseOperator) else np.asarray(O)
    dim = _check_dim(spec)
    if mat.shape != (dim, dim):
        raise ValueError(f"operator shape {mat.shape} does not match dimension {dim}")
    if dim <= 1024:
        proj = antisymmetrizer(spec)
        return _spectral_norm(proj @ mat @ proj)
    S = slater_basis(spec)
    return _spectral_norm(S.conj().T @ mat @ S)
