"""Closed-form T-gate costs and register sizes for primitive subroutines.

Covers bitstring squaring, the approximate QFT, single and multi-controlled
Z rotations, multi-controlled Toffolis, and the sizing of the phase-kickback
construction used to exponentiate diagonal operators. Rotation-synthesis
costs are real numbers here; composite estimators keep them real and ceil
once when a report is assembled.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field


def t_squ(N: int) -> int:
    """T-count 4N^2 - 4N for squaring an N-bit register into a fresh one."""
    if N < 1:
        raise ValueError(f"squaring needs at least one bit, got N={N}")
    return 4 * N * N - 4 * N


def squ_ancillas(N: int) -> int:
    """Workspace for the N-bit squaring circuit."""
    if N < 1:
        raise ValueError(f"squaring needs at least one bit, got N={N}")
    return N * (N - 1)


def qft_phase_register(N: int, eps: float) -> int:
    """Qubits b in the phase-gradient register of the approximate QFT."""
    if eps <= 0:
        raise ValueError(f"QFT precision must be positive, got {eps}")
    if N <= 1:
        return 1
    return min(N - 1, max(1, math.ceil(math.log2(N / eps)))) + 1


def qft_ancillas(N: int, eps: float) -> int:
    """Total QFT workspace, 3b - 1 including the phase-gradient register."""
    return 3 * qft_phase_register(N, eps) - 1


def t_qft(N: int, eps: float) -> int:
    """T-count of the approximate QFT on N qubits with total error eps.

    7N - 11 + sum_{n=3}^{N-1} (8 min(ceil(log2(N/eps)), n) - 15) for N > 2.
    Small registers use the fixed convention t_qft(1) = 0 (a Hadamard) and
    t_qft(2) = 3 (one controlled phase synthesized with 3 T gates).
    """
    if eps <= 0:
        raise ValueError(f"QFT precision must be positive, got {eps}")
    if N < 1:
        raise ValueError(f"QFT register needs at least one qubit, got N={N}")
    if N == 1:
        return 0
    if N == 2:
        return 3
    bits = max(1, math.ceil(math.log2(N / eps)))
    total = 7 * N - 11
    for n in range(3, N):
        total += 8 * min(bits, n) - 15
    return max(0, total)


def t_rot(eps: float) -> float:
    """Synthesis T-count 0.57 log2(1/eps) + 8.83 for one Z rotation.

    Precision requests at or above 1 clamp the log term to zero, leaving the
    8.83 floor.
    """
    if eps <= 0:
        raise ValueError(f"rotation precision must be positive, got {eps}")
    if eps >= 1:
        return 8.83
    return 0.57 * math.log2(1.0 / eps) + 8.83


def t_mcx(N: int) -> int:
    """T-count 4(N-1) for an X controlled on N qubits (0 for a plain CNOT)."""
    if N < 1:
        raise ValueError(f"multi-controlled X needs at least one control, got N={N}")
    return 4 * (N - 1)


def mcx_ancillas(N: int) -> int:
    """Workspace for the N-controlled X ladder."""
    if N < 1:
        raise ValueError(f"multi-controlled X needs at least one control, got N={N}")
    return N - 1


def t_mcrz(eps: float, N: int) -> float:
    """T-count 8(N-1) + 2 t_rot(eps/2) for a Z rotation on N controls."""
    if N < 1:
        raise ValueError(f"multi-controlled rotation needs N >= 1 controls, got N={N}")
    if eps <= 0:
        raise ValueError(f"rotation precision must be positive, got {eps}")
    return 8 * (N - 1) + 2.0 * t_rot(eps / 2.0)


def mcrz_ancillas(N: int) -> int:
    """Workspace for the N-controlled Z rotation."""
    return mcx_ancillas(N)


@dataclass(frozen=True)
class KickbackSizing:
    """Register sizes and adder cost for the phase-kickback construction.

    b is the phase register width, b_lambda the eigenvalue register width,
    w_H the Hamming weight of the phase constant gamma = t*Lambda/(2 pi)
    truncated to b_lambda significant bits, and t_diag the resulting adder
    T-count 4b * min(ceil((b_lambda+1)/2), w_H).
    """

    b: int
    b_lambda: int
    w_H: int
    t_diag: float
    flags: tuple = field(default_factory=tuple)


def hamming_weight_of_constant(gamma: float, b_lambda: int) -> int:
    """Hamming weight of gamma written in binary with b_lambda significant
    bits anchored at its most-significant bit.

    With gamma = f * 2^e for f in [0.5, 1), the leading bit sits at position
    e, so the kept window is floor(gamma * 2^(b_lambda - e)). Truncating a
    double beyond its 53 mantissa bits only appends zeros, which carry no
    weight.
    """
    if gamma <= 0:
        raise ValueError(f"phase constant must be positive, got {gamma}")
    if b_lambda < 1:
        raise ValueError(f"need at least one significant bit, got {b_lambda}")
    mantissa, exponent = math.frexp(gamma)
    window = int(math.floor(mantissa * 2.0 ** 53))
    if b_lambda < 53:
        window >>= 53 - b_lambda
    return window.bit_count()


def kickback_sizing(
    t: float,
    Lambda: float,
    eps: float,
    exact_eigenvalues: bool = False,
    b_lambda_override: int | None = None,
) -> KickbackSizing:
    """Size the phase-kickback registers for evolving a diagonal operator
    with norm bound Lambda for time t to accuracy eps.

    The approximate-eigenvalue branch sets b_lambda = ceil(log2(3 t Lambda /
    eps)) and b = ceil(log2(x log2 x)) at x = 3 t Lambda / eps. When the
    eigenvalues are stored exactly (exact_eigenvalues = True) the caller
    supplies b_lambda_override (the exact register width) and the smaller
    x = 2 t Lambda / eps applies. Degenerate corners clamp b and b_lambda up
    to keep b >= b_lambda >= 1 and are flagged.
    """
    if t * Lambda <= 0:
        raise ValueError(f"need t*Lambda > 0, got t={t}, Lambda={Lambda}")
    if not 0 < eps < 1:
        raise ValueError(f"kickback accuracy must be in (0, 1), got {eps}")

    flags: list[str] = []
    if exact_eigenvalues:
        if b_lambda_override is None:
            raise ValueError(
                "exact-eigenvalue sizing needs b_lambda_override (the width of "
                "the exact eigenvalue register)"
            )
        x = 2.0 * t * Lambda / eps
        b_lambda = b_lambda_override
    else:
        x = 3.0 * t * Lambda / eps
        b_lambda = math.ceil(math.log2(x))
    if b_lambda < 1:
        b_lambda = 1
        flags.append("b_lambda-clamped")

    log_x = math.log2(x)
    if log_x <= 0 or x * log_x <= 1.0:
        b = 1
        flags.append("b-clamped")
    else:
        b = math.ceil(math.log2(x * log_x))
    if b < b_lambda:
        b = b_lambda
        flags.append("b-raised-to-b_lambda")

    gamma = t * Lambda / (2.0 * math.pi)
    w_H = hamming_weight_of_constant(gamma, b_lambda)
    t_diag = 4.0 * b * min(math.ceil((b_lambda + 1) / 2), w_H)
    return KickbackSizing(b=b, b_lambda=b_lambda, w_H=w_H, t_diag=t_diag, flags=tuple(flags))
