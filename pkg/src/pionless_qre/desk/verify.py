"""Desk-scale checks tying circuit constructions to exact linear algebra.

Each check returns a VerificationResult with a measured quantity and the
bound it must stay under. The module also keeps a registry of named cases
small enough to run as a suite from the command line.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from ..gates import kickback_sizing
from ..norms import commutator_bounds, potential_norm_bounds
from ..params import (
    HamiltonianParams,
    LatticeConfig,
    SystemSpec,
    kinetic_coefficient,
    lambda_T,
)
from .circuits import (
    Simulator,
    block_encoding_circuit,
    kinetic_evolution_circuit,
    potential_phase_circuit,
    umatch_circuit,
)
from .dense import (
    antisymmetrizer,
    build_exact_T,
    build_exact_V,
    dft_matrix,
    folded_momenta,
    kinetic_axis_matrix,
    potential_diagonal,
    seminorm_oracle,
)


@dataclass(frozen=True)
class VerificationResult:
    case: str
    measured: float
    bound: float
    passed: bool
    detail: str = ""


def _result(case, measured, bound, detail=""):
    measured = float(measured)
    bound = float(bound)
    passed = measured <= bound * (1.0 + 1e-9) + 1e-15
    return VerificationResult(case, measured, bound, passed, detail)


def _wire_sites(spec: SystemSpec) -> np.ndarray:
    """(N, eta) site ids for the circuit's spatial space, one per particle
    block, wire convention (particle-major, low bits first)."""
    dm = spec.lattice.d * spec.lattice.m
    N = 1 << (spec.eta * dm)
    idx = np.arange(N)
    mask = (1 << dm) - 1
    return np.stack([(idx >> (i * dm)) & mask for i in range(spec.eta)], axis=1)


def _wire_potential_diag(spec: SystemSpec) -> np.ndarray:
    sites = _wire_sites(spec)
    diag = np.zeros(sites.shape[0])
    for i, j in itertools.combinations(range(spec.eta), 2):
        diag += spec.params.C * (sites[:, i] == sites[:, j])
    for i, j, k in itertools.combinations(range(spec.eta), 3):
        diag += spec.params.G * (
            (sites[:, i] == sites[:, j]) & (sites[:, j] == sites[:, k])
        )
    return diag


def verify_potential(spec: SystemSpec, t: float = 0.017, tol: float = 1e-10) -> VerificationResult:
    """Run the diagonal potential circuit once on a uniform superposition
    and compare every amplitude phase to exp(-i t V(x))."""
    seq = potential_phase_circuit(spec, t)
    sim = Simulator(seq.n_wires)
    N = 1 << (seq.n_wires - 1)
    psi = np.zeros(sim.dim, dtype=complex)
    psi[:N] = 1.0 / math.sqrt(N)
    out = sim.run(seq, psi)
    leak = float(np.abs(out[N:]).max(initial=0.0))
    got = out[:N] * math.sqrt(N)
    want = np.exp(-1j * t * _wire_potential_diag(spec))
    measured = max(float(np.abs(got - want).max()), leak)
    name = f"potential/eta{spec.eta}-d{spec.lattice.d}-m{spec.lattice.m}"
    return _result(name, measured, tol, f"t={t}")


def _single_axis_spec(spec: SystemSpec) -> SystemSpec:
    return SystemSpec(spec.params, LatticeConfig(d=1, m=spec.lattice.m), eta=1)


def _exact_axis_evolution(spec: SystemSpec, t: float) -> np.ndarray:
    M = spec.lattice.M
    K = kinetic_coefficient(spec)
    F = dft_matrix(M)
    q = folded_momenta(M)
    return F.conj().T @ np.diag(np.exp(-1j * t * K * q.astype(float) ** 2)) @ F


def verify_kinetic(spec: SystemSpec, t: float = 0.05, tol: float = 1e-10) -> VerificationResult:
    """Compare the Z-string kinetic circuit against exact single-axis
    evolution blocks (the product bound sums block errors) and spot-check
    the full circuit on a random state."""
    m = spec.lattice.m
    M = spec.lattice.M
    axis_seq = kinetic_evolution_circuit(_single_axis_spec(spec), t)
    axis_sim = Simulator(axis_seq.n_wires)
    U = np.zeros((M, M), dtype=complex)
    leak = 0.0
    for x in range(M):
        col = axis_sim.run(axis_seq, x)
        U[:, x] = col[:M]
        leak = max(leak, float(np.abs(col[M:]).max(initial=0.0)))
    E = _exact_axis_evolution(spec, t)
    block_err = float(np.linalg.norm(U - E, 2))
    telescoped = spec.eta * spec.lattice.d * block_err + leak

    seq = kinetic_evolution_circuit(spec, t)
    sim = Simulator(seq.n_wires)
    N = 1 << (seq.n_wires - 1)
    rng = np.random.default_rng(11)
    psi = rng.normal(size=N) + 1j * rng.normal(size=N)
    psi /= np.linalg.norm(psi)
    full = np.zeros(sim.dim, dtype=complex)
    full[:N] = psi
    out = sim.run(seq, full)[:N]
    want = psi
    for block in range(spec.eta * spec.lattice.d):
        low = 1 << (block * m)
        high = N // (low * M)
        want = (
            np.tensordot(E, want.reshape(high, M, low), axes=(1, 1))
            .transpose(1, 0, 2)
            .reshape(-1)
        )
    spot = float(np.linalg.norm(out - want))
    measured = max(telescoped, spot)
    name = f"kinetic/eta{spec.eta}-d{spec.lattice.d}-m{spec.lattice.m}"
    return _result(name, measured, tol, f"t={t} block_err={block_err:.2e} spot={spot:.2e}")


def verify_umatch(spec: SystemSpec) -> VerificationResult:
    """Exhaustively check the match counter as a classical reversible map:
    every basis state with clear scratch must gain S += (number of other
    particles on particle 0's site) mod 4, leaving everything else fixed."""
    seq = umatch_circuit(spec)
    sim = Simulator(seq.n_wires)
    images = sim.classical_map(seq)
    dm = spec.lattice.d * spec.lattice.m
    n_spatial = spec.eta * dm
    s0 = n_spatial
    mu = n_spatial + 2
    idx = np.arange(sim.dim)
    sites = np.stack(
        [(idx >> (i * dm)) & ((1 << dm) - 1) for i in range(spec.eta)], axis=1
    )
    matches = np.zeros(sim.dim, dtype=np.int64)
    for j in range(1, spec.eta):
        matches += sites[:, 0] == sites[:, j]
    clean = ((idx >> mu) & 1) == 0
    s_in = (idx >> s0) & 3
    s_out = (s_in + matches) & 3
    expected = (idx & ~(3 << s0)) | (s_out << s0)
    mismatches = int(np.count_nonzero(images[clean] != expected[clean]))
    name = f"umatch/eta{spec.eta}-d{spec.lattice.d}-m{spec.lattice.m}"
    return _result(name, float(mismatches), 0.0, f"{int(clean.sum())} states checked")


def verify_phase_kickback(spec: SystemSpec, t: float, eps: float) -> VerificationResult:
    """Drive the adder-based phase kickback on the single-axis kinetic
    spectrum: the register sized by the kickback rule, acting on the
    Fourier one-state by integer shifts, must phase every eigenvalue to
    within eps."""
    M = spec.lattice.M
    K = kinetic_coefficient(spec)
    spectrum = K * folded_momenta(M).astype(float) ** 2
    Lam = K * 4.0 ** (spec.lattice.m - 1)
    sizing = kickback_sizing(t, Lam, eps)
    b, b_lam = sizing.b, sizing.b_lambda
    if b > 22:
        raise ValueError(
            f"phase register of {b} qubits is beyond the desk scale; "
            "loosen eps or shorten t"
        )
    gamma = t * Lam / (2.0 * math.pi)
    mant, expo = math.frexp(gamma)
    window = int(math.floor(mant * (1 << b_lam)))
    dim = 1 << b
    j = np.arange(dim)
    fourier_one = np.exp(2j * np.pi * j / dim) / math.sqrt(dim)
    measured = 0.0
    for lam_m in spectrum:
        if lam_m < 0:
            raise ValueError("kickback verification needs a nonnegative spectrum")
        l_m = round((1 << b_lam) * lam_m / Lam)
        Km = 0
        for k in range(1, b_lam + 1):
            if (window >> (b_lam - k)) & 1:
                shift = expo - k + b - b_lam
                Km += (l_m << shift) if shift >= 0 else (l_m >> -shift)
        Km %= dim
        overlap = np.vdot(fourier_one, np.roll(fourier_one, Km))
        measured = max(measured, abs(overlap - np.exp(-1j * t * lam_m)))
    name = f"kickback/m{spec.lattice.m}-eps{eps:g}"
    return _result(name, measured, eps, f"b={b} b_lambda={b_lam} t={t}")


def verify_block_encoding(spec: SystemSpec, tol: float = 1e-8) -> VerificationResult:
    """Extract the encoded block column by column and compare lambda times
    the block to the exact Hamiltonian on the spatial space."""
    enc = block_encoding_circuit(spec)
    sim = Simulator(enc.n_wires)
    Ns = 1 << len(enc.system_wires)
    W = np.zeros((sim.dim, Ns), dtype=complex)
    V = np.zeros((sim.dim, Ns), dtype=complex)
    for x in range(Ns):
        W[:, x] = sim.run(enc.prepare, x)
        V[:, x] = sim.run(enc.select, W[:, x])
    block = W.conj().T @ V

    m, M = spec.lattice.m, spec.lattice.M
    E1 = kinetic_axis_matrix(spec)
    H = np.zeros((Ns, Ns))
    for i in range(spec.eta):
        low = 1 << (i * m)
        high = Ns // (low * M)
        H += np.kron(np.eye(high), np.kron(E1, np.eye(low)))
    H = H + np.diag(_wire_potential_diag(spec))
    measured = float(np.abs(enc.lam * block - H).max())
    name = f"block/eta{spec.eta}-d1-m{m}"
    return _result(name, measured, tol, f"lambda={enc.lam:.6g}")


_DENSE_CACHE: dict = {}


def _dense_instance(spec: SystemSpec) -> dict:
    key = (spec.eta, spec.lattice.d, spec.lattice.m)
    if key not in _DENSE_CACHE:
        T = build_exact_T(spec).matrix
        vdiag = potential_diagonal(spec)
        H = T + np.diag(vdiag)
        wT, VT = np.linalg.eigh(T)
        wH, VH = np.linalg.eigh(H)
        _DENSE_CACHE[key] = {
            "wT": wT,
            "VT": VT,
            "wH": wH,
            "VH": VH,
            "vdiag": vdiag,
            "proj": antisymmetrizer(spec),
        }
    return _DENSE_CACHE[key]


def _exp_T(inst, tau):
    return (inst["VT"] * np.exp(-1j * tau * inst["wT"])) @ inst["VT"].conj().T


def _step_matrix(inst, order, tau):
    phases = np.exp(-1j * tau * inst["vdiag"])
    if order == 1:
        return _exp_T(inst, tau) * phases[None, :]
    if order == 2:
        half = _exp_T(inst, tau / 2.0)
        return (half * phases[None, :]) @ half
    raise ValueError(f"step order must be 1 or 2, got {order}")


def verify_trotter_bound(spec: SystemSpec, order: int, t: float, r: int) -> VerificationResult:
    """Measure the product-formula error on the antisymmetric subspace and
    compare to r (t/r)^(order+1) alpha_order."""
    if r < 1 or t <= 0:
        raise ValueError("need r >= 1 and t > 0")
    inst = _dense_instance(spec)
    tau = t / r
    U = (inst["VH"] * np.exp(-1j * t * inst["wH"])) @ inst["VH"].conj().T
    S = np.linalg.matrix_power(_step_matrix(inst, order, tau), r)
    measured = float(np.linalg.norm((U - S) @ inst["proj"], 2))
    alpha = commutator_bounds(spec).for_order(order)
    bound = r * tau ** (order + 1) * alpha
    name = f"trotter/order{order}-eta{spec.eta}-d{spec.lattice.d}-m{spec.lattice.m}"
    return _result(name, measured, bound, f"t={t:.4g} r={r}")


_SUITE_INSTANCES = ((2, 1, 1), (2, 1, 2), (3, 1, 1))


def trotter_bound_suite(orders=(1, 2), samples_per=12, seed=20240816):
    """Randomized product-formula error audit: for each desk instance and
    order, draw times and step counts so the analytic bound lands in a
    meaningful range, then check the measured error never exceeds it."""
    rng = np.random.default_rng(seed)
    results = []
    params = HamiltonianParams()
    for eta, d, m in _SUITE_INSTANCES:
        spec = SystemSpec(params, LatticeConfig(d=d, m=m), eta=eta)
        for order in orders:
            alpha = commutator_bounds(spec).for_order(order)
            for _ in range(samples_per):
                r = int(rng.integers(1, 21))
                target = 10.0 ** rng.uniform(-5.0, -0.3)
                tau = (target / (r * alpha)) ** (1.0 / (order + 1))
                t = r * tau
                res = verify_trotter_bound(spec, order, t, r)
                results.append(res)
    return results


def _seminorm_case(name, op, spec, bound, detail=""):
    measured = seminorm_oracle(op, spec)
    return _result(name, measured, bound, detail)


def _spec(eta, d, m):
    return SystemSpec(HamiltonianParams(), LatticeConfig(d=d, m=m), eta=eta)


def _projector_case(eta, d, m):
    spec = _spec(eta, d, m)
    proj = antisymmetrizer(spec)
    residual = max(
        float(np.abs(proj @ proj - proj).max()),
        float(np.abs(proj - proj.T).max()),
    )
    name = f"projector/eta{eta}-d{d}-m{m}"
    return _result(name, residual, 1e-12, f"dim={proj.shape[0]}")


def _seminorm_T(eta, d, m):
    spec = _spec(eta, d, m)
    return _seminorm_case(
        f"seminorm/T-eta{eta}-d{d}-m{m}", build_exact_T(spec), spec, lambda_T(spec)
    )


def _seminorm_V2(eta, d, m):
    spec = _spec(eta, d, m)
    bound = potential_norm_bounds(spec)["v2"]
    op = build_exact_V(spec, pairs=True, triples=False)
    return _seminorm_case(f"seminorm/V2-eta{eta}-d{d}-m{m}", op, spec, bound)


def _seminorm_V3(eta, d, m):
    spec = _spec(eta, d, m)
    bound = potential_norm_bounds(spec)["v3"]
    op = build_exact_V(spec, pairs=False, triples=True)
    return _seminorm_case(f"seminorm/V3-eta{eta}-d{d}-m{m}", op, spec, bound)


def _seminorm_V(eta, d, m):
    spec = _spec(eta, d, m)
    bound = potential_norm_bounds(spec)["combined"]
    op = build_exact_V(spec)
    return _seminorm_case(f"seminorm/V-eta{eta}-d{d}-m{m}", op, spec, bound)


def _seminorm_commutator(eta, d, m):
    spec = _spec(eta, d, m)
    T = build_exact_T(spec).matrix
    V = np.diag(potential_diagonal(spec))
    bound = 2.0 * commutator_bounds(spec).alpha1
    return _seminorm_case(
        f"seminorm/TV-commutator-eta{eta}-d{d}-m{m}", T @ V - V @ T, spec, bound
    )


def _trotter_registry_case(order):
    results = trotter_bound_suite(orders=(order,), samples_per=4)
    ratio = max(
        (res.measured / res.bound if res.bound > 0 else 0.0) for res in results
    )
    return _result(f"trotter/order{order}", ratio, 1.0, f"{len(results)} samples")


def registry_cases() -> dict:
    """Named desk checks runnable from the command line. Values are
    zero-argument callables returning a VerificationResult."""
    cases = {}

    def add(name, fn):
        cases[name] = fn

    add("potential/eta2-d1-m2", lambda: verify_potential(_spec(2, 1, 2)))
    add("potential/eta3-d1-m1", lambda: verify_potential(_spec(3, 1, 1)))
    add("potential/eta3-d1-m2", lambda: verify_potential(_spec(3, 1, 2)))
    add("potential/eta2-d3-m1", lambda: verify_potential(_spec(2, 3, 1)))
    add("kinetic/eta1-d1-m2", lambda: verify_kinetic(_spec(1, 1, 2)))
    add("kinetic/eta2-d1-m2", lambda: verify_kinetic(_spec(2, 1, 2)))
    add("kinetic/eta2-d3-m1", lambda: verify_kinetic(_spec(2, 3, 1)))
    add("kinetic/eta2-d2-m2", lambda: verify_kinetic(_spec(2, 2, 2)))
    add("umatch/eta2-d1-m2", lambda: verify_umatch(_spec(2, 1, 2)))
    add("umatch/eta3-d1-m1", lambda: verify_umatch(_spec(3, 1, 1)))
    add("umatch/eta4-d1-m1", lambda: verify_umatch(_spec(4, 1, 1)))
    add("umatch/eta3-d2-m1", lambda: verify_umatch(_spec(3, 2, 1)))
    add("kickback/m1", lambda: verify_phase_kickback(_spec(1, 1, 1), t=0.1, eps=0.05))
    add("kickback/m2", lambda: verify_phase_kickback(_spec(1, 1, 2), t=0.1, eps=0.05))
    add("kickback/m3", lambda: verify_phase_kickback(_spec(1, 1, 3), t=0.05, eps=0.01))
    add("block/eta2-d1-m1", lambda: verify_block_encoding(_spec(2, 1, 1)))
    add("block/eta2-d1-m2", lambda: verify_block_encoding(_spec(2, 1, 2)))
    add("projector/eta2-d1-m2", lambda: _projector_case(2, 1, 2))
    add("projector/eta3-d1-m1", lambda: _projector_case(3, 1, 1))
    add("seminorm/T-eta2-d1-m2", lambda: _seminorm_T(2, 1, 2))
    add("seminorm/V2-eta3-d1-m1", lambda: _seminorm_V2(3, 1, 1))
    add("seminorm/V3-eta3-d1-m1", lambda: _seminorm_V3(3, 1, 1))
    add("seminorm/V-eta3-d1-m1", lambda: _seminorm_V(3, 1, 1))
    add("seminorm/V-eta3-d1-m2", lambda: _seminorm_V(3, 1, 2))
    add("seminorm/TV-commutator-eta2-d1-m1", lambda: _seminorm_commutator(2, 1, 1))
    add("trotter/order1", lambda: _trotter_registry_case(1))
    add("trotter/order2", lambda: _trotter_registry_case(2))
    return cases


def run_cases(name_filter: str = "") -> list:
    """Run every registry case whose name contains the filter substring."""
    results = []
    for name, fn in registry_cases().items():
        if name_filter in name:
            results.append(fn())
    return results
