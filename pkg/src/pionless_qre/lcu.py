"""Block-encoding one-norms and costs, and the QSP evolution estimate.

The kinetic, potential, and full-Hamiltonian block encodings carry one-norms
lambda_T, lambda_V, and lambda_H = lambda_T + lambda_V; the QSP estimator
multiplies a per-segment select/prepare cost by the number of phased
iterations R(t, eps). As everywhere else, rotation-synthesis costs stay real
until a report entry is ceiled.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .gates import qft_phase_register, t_qft, t_rot
from .params import SystemSpec, lambda_T
from .trotter import Tally, system_qubits

QSP_LOG_BASES = (2, "e")


@dataclass(frozen=True)
class BlockEncodingReport:
    """One-norm and cost of a single block encoding.

    lam is the encoding one-norm in MeV; block_qubits the register the
    encoded operator is projected on; ancilla_qubits the extra workspace.
    """

    lam: float
    t_count: int
    block_qubits: int
    ancilla_qubits: int
    registers: dict
    flags: tuple = field(default_factory=tuple)


@dataclass(frozen=True)
class QspReport:
    """Cost of the full QSP evolution: R segments of select/prepare plus
    reflections and one processing rotation per segment."""

    R: int
    lambda_H: float
    t_count: int
    total_qubits: int
    breakdown: dict
    registers: dict
    flags: tuple = field(default_factory=tuple)


def lambda_V_lcu(spec: SystemSpec) -> float:
    """Potential block-encoding one-norm eta(3|C| + 4G)/2 in MeV."""
    return spec.eta * (3.0 * abs(spec.params.C) + 4.0 * spec.params.G) / 2.0


def lambda_H_lcu(spec: SystemSpec) -> float:
    """Full-Hamiltonian one-norm, the exact sum of the kinetic and
    potential encoding norms."""
    return lambda_T(spec) + lambda_V_lcu(spec)


def _check_eps(eps: float) -> None:
    if eps <= 0:
        raise ValueError(f"encoding accuracy must be positive, got {eps}")


def _n_eta(eta: int) -> int:
    if eta < 1:
        raise ValueError("block encodings need at least one particle")
    return math.ceil(math.log2(eta))


def lcu_T(spec: SystemSpec, eps: float) -> BlockEncodingReport:
    """Kinetic block encoding: momentum-space projectors selected over
    particles and axes, QFT conjugated."""
    _check_eps(eps)
    d, m, eta = spec.lattice.d, spec.lattice.m, spec.eta
    if m < 2:
        raise ValueError("the kinetic block encoding needs m >= 2 momentum bits")
    flags: list[str] = []
    n_eta = _n_eta(eta)
    if eta == 1:
        flags.append("single-particle")
    b_r = math.ceil(0.5 * math.log2(9.0 * math.pi ** 2 / eps))
    count = (
        2 * d * t_qft(m, eps / (4.0 * d))
        + 12 * n_eta
        + 16 * b_r
        + 16 * m
        + 4 * (2 * eta - 1) * d * m
        - 4 * d
        - 52
    )
    if count < 0:
        count = 0
        flags.append("count-clamped")
    b_qft = qft_phase_register(m, eps / (4.0 * d))
    return BlockEncodingReport(
        lam=lambda_T(spec),
        t_count=count,
        block_qubits=eta + 2 * m + 6,
        ancilla_qubits=b_qft + max(2 * b_qft - 1, m + 6),
        registers={"b_QFT": b_qft, "b_r": b_r, "n_eta": n_eta},
        flags=tuple(flags),
    )


def lcu_V(spec: SystemSpec, eps: float) -> BlockEncodingReport:
    """Potential block encoding: per-particle match counts drive one linear
    and one quadratic branch with three rotations in total."""
    _check_eps(eps)
    d, m, eta = spec.lattice.d, spec.lattice.m, spec.eta
    _n_eta(eta)
    flags: list[str] = []
    lam = lambda_V_lcu(spec)
    if lam <= 0:
        flags.append("zero-norm")
    tally = Tally(
        ints=24 * (eta - 1) * d * m - 8 * eta + 44,
        rots=3.0 * t_rot(eps / 6.0),
    )
    return BlockEncodingReport(
        lam=lam,
        t_count=tally.ceiled(),
        block_qubits=eta + 6,
        ancilla_qubits=d * m + 4,
        registers={"S": 2, "l": 1, "p": 1, "q": 1},
        flags=tuple(flags),
    )


def lcu_H(spec: SystemSpec, eps: float) -> BlockEncodingReport:
    """Full-Hamiltonian block encoding with a kinetic/potential selector on
    top of the two constituent encodings."""
    _check_eps(eps)
    d, m, eta = spec.lattice.d, spec.lattice.m, spec.eta
    if m < 2:
        raise ValueError("the full block encoding needs m >= 2 momentum bits")
    flags: list[str] = []
    n_eta = _n_eta(eta)
    if eta == 1:
        flags.append("single-particle")
    b_r = math.ceil(0.5 * math.log2(18.0 * math.pi ** 2 / eps))
    tally = Tally(
        ints=(
            4 * (6 * eta - 5) * d * m
            + 16 * m
            - 4 * d
            + 2 * d * t_qft(m, eps / (8.0 * d))
            - 8 * eta
            + 12 * n_eta
            + 16 * b_r
        ),
        rots=3.0 * t_rot(eps / 12.0) + t_rot(eps / 2.0),
    )
    b_qft = qft_phase_register(m, eps / (8.0 * d))
    return BlockEncodingReport(
        lam=lambda_H_lcu(spec),
        t_count=tally.ceiled(),
        block_qubits=eta + 2 * m + 10,
        ancilla_qubits=b_qft + max(2 * b_qft - 1, d * m + 6),
        registers={"b_QFT": b_qft, "b_r": b_r, "n_eta": n_eta, "S": 2, "l": 1, "p": 1, "q": 1},
        flags=tuple(flags),
    )


def qsp_segments(spec: SystemSpec, eps: float, t: float, log_base=2) -> int:
    """Number of phased-iteration segments R = 3(ceil(2 lambda_H t +
    3 log(24/eps)) + 1) under the chosen log base."""
    if log_base not in QSP_LOG_BASES:
        raise ValueError(f"log base must be one of {QSP_LOG_BASES}, got {log_base!r}")
    lam = lambda_H_lcu(spec)
    if lam <= 0:
        raise ValueError("nothing to encode: lambda_H is zero")
    log = math.log2(24.0 / eps) if log_base == 2 else math.log(24.0 / eps)
    return 3 * (math.ceil(2.0 * lam * abs(t) + 3.0 * log) + 1)


def qsp_evolution(
    spec: SystemSpec,
    eps: float,
    t: float,
    log_base=2,
    include_internal: bool = False,
) -> QspReport:
    """Full QSP evolution cost for time t (MeV^-1) and total error eps."""
    if not 0 < eps < 1:
        raise ValueError(f"QSP accuracy must be in (0, 1), got {eps}")
    if t <= 0:
        raise ValueError(f"evolution time must be positive, got {t}")
    d, m, eta = spec.lattice.d, spec.lattice.m, spec.eta
    if m < 2:
        raise ValueError("the QSP estimate needs m >= 2 momentum bits")
    n_eta = _n_eta(eta)
    lam = lambda_H_lcu(spec)
    if lam <= 0:
        raise ValueError("nothing to encode: lambda_H is zero")
    R = qsp_segments(spec, eps, t, log_base)
    lam_t = lam * abs(t)
    b_r = math.ceil(0.5 * math.log2(72.0 * lam_t * math.pi ** 2 / eps))

    prepare = Tally(
        ints=12 * n_eta + 16 * b_r + 8 * m - 64,
        rots=3.0 * t_rot(eps / (48.0 * lam_t)) + t_rot(eps / (8.0 * lam_t)),
    ).scale(R)
    select = Tally(
        ints=(
            24 * (eta - 1) * d * m
            + 4 * (d + 2) * (m - 1)
            + 2 * d * t_qft(m, eps / (32.0 * d * lam_t))
            - 8 * eta
            + 88
        )
    ).scale(R)
    reflections = Tally(ints=4 * (eta + 2 * m + 9)).scale(R)
    qsp_rotations = Tally(rots=float(R) * t_rot(eps / (2.0 * R)))

    breakdown = {
        "prepare": prepare.ceiled(),
        "select": select.ceiled(),
        "reflections": reflections.ceiled(),
        "qsp-rotations": qsp_rotations.ceiled(),
    }
    b_qft = qft_phase_register(m, eps / (24.0 * d * lam_t))
    total_qubits = (
        system_qubits(spec, include_internal)
        + eta + 2 * m + 12
        + b_qft
        + max(2 * b_qft - 1, d * m + 6, eta + 2 * m + 9)
    )
    return QspReport(
        R=R,
        lambda_H=lam,
        t_count=sum(breakdown.values()),
        total_qubits=total_qubits,
        breakdown=breakdown,
        registers={"b_QFT": b_qft, "b_r": b_r, "n_eta": n_eta},
        flags=(),
    )
