"""Fermionic-seminorm upper bounds and Trotter commutator constants.

For antisymmetric states at most four fermions (two spins times two isospins)
can share a lattice site, which caps how many interacting pairs and triples
the contact potential can see at once. The bounds here exploit that cap; the
desk verifier cross-checks them against explicit projected operators on tiny
lattices.
"""

from __future__ import annotations

from dataclasses import dataclass

from .params import HamiltonianParams, SystemSpec, kinetic_coefficient


def max_triples(eta: int) -> int:
    """Largest number of same-site triples eta fermions can form.

    Filling sites four at a time gives 4 triples per full site; a remainder
    of 3 adds one more.
    """
    if eta < 0:
        raise ValueError(f"particle number must be non-negative, got {eta}")
    extra = 1 if eta % 4 == 3 else 0
    return 4 * (eta // 4) + extra


def max_couples(eta: int) -> int:
    """Largest number of same-site pairs eta fermions can form.

    6 pairs per fully occupied site, plus 3 for a remainder of 3 or 1 for a
    remainder of 2.
    """
    if eta < 0:
        raise ValueError(f"particle number must be non-negative, got {eta}")
    extra = {3: 3, 2: 1}.get(eta % 4, 0)
    return 6 * (eta // 4) + extra


def potential_norm_bounds(spec: SystemSpec) -> dict:
    """Seminorm bounds on the two-body, three-body, and combined potential.

    The combined bound maximizes the summed pair and triple couplings over
    per-site occupancies 2, 3, 4 (occupancy k contributes C*k(k-1)/2 +
    G*k(k-1)(k-2)/6 per site, and eta particles fill at most floor(eta/k)
    such sites), letting opposite-sign couplings cancel.
    """
    eta = spec.eta
    C = spec.params.C
    G = spec.params.G
    combined = max(
        abs(C) * (eta // 2),
        abs(3.0 * C + G) * (eta // 3),
        abs(6.0 * C + 4.0 * G) * (eta // 4),
    )
    return {
        "v2": 1.5 * eta * abs(C),
        "v3": eta * abs(G),
        "combined": combined,
    }


def M_s(s: int, params: HamiltonianParams) -> float:
    """Occupancy-weighted coupling maximum used by the commutator bounds.

    max over per-site occupancy 2, 3, 4 of |2^s C/2|, |2^s C + 3^s G/6|,
    |2^s 3C/2 + 3^s G/2|, where 2^s and 3^s weight the pair and triple
    multiplicities raised to the commutator order s.
    """
    if s not in (1, 2, 3, 4):
        raise ValueError(f"occupancy weight order must be 1..4, got {s}")
    C = params.C
    G = params.G
    return max(
        abs(2 ** s * C / 2.0),
        abs(2 ** s * C + 3 ** s * G / 6.0),
        abs(2 ** s * 3.0 * C / 2.0 + 3 ** s * G / 2.0),
    )


@dataclass(frozen=True)
class CommutatorBounds:
    """Per-step Trotter error constants: alpha1 (MeV^2) for first order,
    alpha2 (MeV^3) for second, alpha4 (MeV^5) for fourth."""

    alpha1: float
    alpha2: float
    alpha4: float

    def __post_init__(self):
        if min(self.alpha1, self.alpha2, self.alpha4) < 0:
            raise ValueError("commutator bounds must be non-negative")

    def for_order(self, order: int) -> float:
        if order == 1:
            return self.alpha1
        if order == 2:
            return self.alpha2
        if order == 4:
            return self.alpha4
        raise ValueError(f"product-formula order must be 1, 2, or 4, got {order}")


def commutator_bounds(spec: SystemSpec) -> CommutatorBounds:
    """Seminorm commutator constants for the product-formula step errors.

    kin1 = lambda_T/eta is the single-particle kinetic bound d*K*2^(2m-2);
    each alpha combines powers of kin1 with the occupancy maxima M_s.
    """
    params = spec.params
    kin1 = spec.lattice.d * kinetic_coefficient(spec) * 4 ** (spec.lattice.m - 1)
    m1 = M_s(1, params)
    alpha1 = spec.eta * kin1 * m1

    m2 = M_s(2, params)
    alpha2 = 4.0 * spec.eta * (kin1 ** 2 * m2 / 24.0 + kin1 * m1 ** 2 / 12.0)

    m3 = M_s(3, params)
    m4 = M_s(4, params)
    alpha4 = 16.0 * spec.eta * (
        0.0047 * kin1 ** 4 * m4
        + 0.02 * kin1 ** 3 * m3 ** 2
        + 0.01883 * kin1 ** 2 * m2 ** 3
        + 0.0284 * kin1 * m1 ** 4
    )
    return CommutatorBounds(alpha1=alpha1, alpha2=alpha2, alpha4=alpha4)
