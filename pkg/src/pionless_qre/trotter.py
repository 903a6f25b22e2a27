"""T-gate and qubit estimates for product-formula evolution.

Builds per-exponential costs for the kinetic term (QFT conjugation plus a
momentum-squaring phase kickback) and the contact potential (pairwise and
triple delta circuits), then composes them into full first-, second-, and
fourth-order product-formula totals with the fixed per-step error splits.

Rotation-synthesis costs stay real all the way through a composition; each
breakdown entry is ceiled exactly once when the report is assembled, and the
reported t_count is the sum of the ceiled entries.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .gates import kickback_sizing, qft_phase_register, t_mcrz, t_mcx, t_qft, t_rot, t_squ
from .norms import commutator_bounds
from .params import SystemSpec, lambda_T

KICKBACK_CONSTANTS = ("lemma8", "appendix4")

# Fourth-order Suzuki splitting: the longest kinetic sub-step carries the
# coefficient 1/(4 - 4^(1/3)) of the step time.
_S4_LONGEST = 1.0 / (4.0 - 4.0 ** (1.0 / 3.0))


@dataclass(frozen=True)
class Tally:
    """Running T-count split into an exact integer part and a real
    rotation-synthesis part."""

    ints: int = 0
    rots: float = 0.0

    def __add__(self, other: "Tally") -> "Tally":
        return Tally(self.ints + other.ints, self.rots + other.rots)

    def scale(self, k: int) -> "Tally":
        return Tally(self.ints * k, self.rots * k)

    def ceiled(self) -> int:
        return self.ints + math.ceil(self.rots)


def _merge(into: dict, extra: dict, k: int = 1) -> None:
    for name, tally in extra.items():
        into[name] = into.get(name, Tally()) + tally.scale(k)


@dataclass(frozen=True)
class CostReport:
    """T-count and qubit accounting for one circuit family.

    t_count equals the sum of the breakdown entries, each ceiled once;
    total_qubits = system_qubits + ancilla_qubits.
    """

    t_count: int
    system_qubits: int
    ancilla_qubits: int
    total_qubits: int
    breakdown: dict
    registers: dict
    flags: tuple = field(default_factory=tuple)


def _finalize(
    breakdown: dict,
    system_qubits: int,
    ancilla_qubits: int,
    registers: dict,
    flags: tuple = (),
) -> CostReport:
    ceiled = {name: tally.ceiled() for name, tally in breakdown.items()}
    return CostReport(
        t_count=sum(ceiled.values()),
        system_qubits=system_qubits,
        ancilla_qubits=ancilla_qubits,
        total_qubits=system_qubits + ancilla_qubits,
        breakdown=ceiled,
        registers=dict(registers),
        flags=flags,
    )


def system_qubits(spec: SystemSpec, include_internal: bool = False) -> int:
    """Spatial system register eta*d*m, plus 2 internal (spin/isospin)
    qubits per particle when include_internal is set.

    The internal qubits are inert in every costed circuit, so the default
    accounting leaves them out.
    """
    n = spec.eta * spec.lattice.d * spec.lattice.m
    if include_internal:
        n += 2 * spec.eta
    return n


def _require_particles(spec: SystemSpec) -> None:
    if spec.eta < 1:
        raise ValueError("cost estimates need at least one particle")


def _exp_T_parts(spec: SystemSpec, eps: float, t: float, kickback_constant: str):
    """Breakdown tallies, register sizes, and flags for one kinetic
    exponential exp(-iTt) accurate to eps."""
    if eps <= 0:
        raise ValueError(f"kinetic-exponential accuracy must be positive, got {eps}")
    if t <= 0:
        raise ValueError(f"evolution time must be positive, got {t}")
    if kickback_constant not in KICKBACK_CONSTANTS:
        raise ValueError(
            f"kickback constant must be one of {KICKBACK_CONSTANTS}, got {kickback_constant!r}"
        )
    _require_particles(spec)

    d = spec.lattice.d
    m = spec.lattice.m
    eta = spec.eta
    axes = d * eta
    sub_eps = eps / (3.0 * axes)

    flags: list[str] = []
    if m >= 2:
        squaring = 2 * t_squ(m - 1)
        b_lambda = 2 * m - 2
    else:
        # A single momentum bit squares to itself; nothing to multiply.
        squaring = 0
        b_lambda = 1
        flags.append("m1-degenerate-squaring")

    sizing = kickback_sizing(
        t, lambda_T(spec), sub_eps, exact_eigenvalues=True, b_lambda_override=b_lambda
    )
    flags.extend(sizing.flags)
    diag = sizing.t_diag
    if kickback_constant == "lemma8":
        # Conservative accounting: two adder passes over the phase register.
        diag *= 2.0

    b_qft = qft_phase_register(m, sub_eps)
    breakdown = {
        "kinetic": Tally(ints=axes * squaring),
        "diag": Tally(ints=axes * int(diag)),
        "qft": Tally(ints=axes * 2 * t_qft(m, sub_eps)),
    }
    registers = {"b_DIAG": sizing.b, "b_QFT": b_qft, "squaring": m * (m - 1)}
    return breakdown, registers, flags


def cost_exp_T(
    spec: SystemSpec, eps: float, t: float, kickback_constant: str = "lemma8"
) -> CostReport:
    """Cost of one kinetic exponential: per particle-axis, two squarings,
    the diagonal phase kickback, and two approximate QFTs."""
    breakdown, registers, flags = _exp_T_parts(spec, eps, t, kickback_constant)
    m = spec.lattice.m
    bq = registers["b_QFT"]
    bd = registers["b_DIAG"]
    ancilla = bq + bd + max(2 * bq - 1, bd, m * (m - 1))
    return _finalize(
        breakdown, system_qubits(spec), ancilla, registers, tuple(flags)
    )


def _exp_V_compact_parts(spec: SystemSpec, eps: float):
    """Breakdown tallies and ancilla count for the combined pair/triple
    potential exponential."""
    if eps <= 0:
        raise ValueError(f"potential-exponential accuracy must be positive, got {eps}")
    eta = spec.eta
    dm = spec.lattice.d * spec.lattice.m
    if eta < 2:
        return {"potential": Tally(), "rotations": Tally()}, 0, ("no-interactions",)
    gamma = eta * (eta - 1) * (eta - 2) // 6 + eta * (eta - 1) // 2
    toffolis = 4 * eta * (eta - 1) * (eta - 2) // 3
    breakdown = {
        "potential": Tally(ints=toffolis + gamma * 2 * t_mcx(dm)),
        "rotations": Tally(rots=gamma * t_rot(eps / gamma)),
    }
    return breakdown, dm + 1, ()


def cost_exp_V_compact(spec: SystemSpec, eps: float) -> CostReport:
    """Cost of one potential exponential using the shared-ancilla scheme:
    every pair and triple delta is flagged once and a single rotation fires
    per flag, Gamma = C(eta,3) + C(eta,2) rotations in total."""
    breakdown, ancilla, flags = _exp_V_compact_parts(spec, eps)
    return _finalize(breakdown, system_qubits(spec), ancilla, {}, flags)


def cost_exp_V_separate(spec: SystemSpec, eps_v2: float, eps_v3: float) -> CostReport:
    """Cost of exponentiating the two- and three-body potentials separately,
    one multi-controlled rotation per pair and per triple."""
    if eps_v2 <= 0 or eps_v3 <= 0:
        raise ValueError("potential-exponential accuracies must be positive")
    eta = spec.eta
    dm = spec.lattice.d * spec.lattice.m
    flags: list[str] = []
    breakdown = {"potential": Tally(), "rotations": Tally()}
    ancilla = 0
    if eta >= 2:
        pairs = eta * (eta - 1) // 2
        controls = dm - 1
        if controls < 1:
            # d = m = 1: registers match in their single bit, the controlled
            # rotation degenerates to a plain one.
            controls = 1
            flags.append("pair-controls-degenerate")
        per_pair = t_mcrz(eps_v2 / pairs, controls)
        breakdown["potential"] += Tally(ints=8 * (controls - 1)).scale(pairs)
        breakdown["rotations"] += Tally(rots=pairs * (per_pair - 8 * (controls - 1)))
        ancilla = max(ancilla, controls - 1)
    if eta >= 3:
        triples = eta * (eta - 1) * (eta - 2) // 6
        controls = 2 * dm - 1
        per_triple = t_mcrz(eps_v3 / triples, controls)
        breakdown["potential"] += Tally(ints=8 * (controls - 1)).scale(triples)
        breakdown["rotations"] += Tally(rots=triples * (per_triple - 8 * (controls - 1)))
        ancilla = max(ancilla, controls - 1)
    if eta < 2:
        flags.append("no-interactions")
    return _finalize(breakdown, system_qubits(spec), ancilla, {}, tuple(flags))


@dataclass(frozen=True)
class TrotterPlan:
    """Step count and error split for a product-formula run."""

    order: int
    r: int
    eps: float
    t: float
    budget: str


def plan_trotter(spec: SystemSpec, order: int, eps: float, t: float) -> TrotterPlan:
    """Number of product-formula steps from the commutator-bound ceilings."""
    if order not in (1, 2, 4):
        raise ValueError(f"product-formula order must be 1, 2, or 4, got {order}")
    if eps <= 0 or t <= 0:
        raise ValueError(f"need eps > 0 and t > 0, got eps={eps}, t={t}")
    _require_particles(spec)
    alpha = commutator_bounds(spec).for_order(order)
    if order == 1:
        raw = 3.0 * t * t * alpha / eps
        budget = "eps/3 formula error, eps/3r per kinetic and per potential exponential"
    elif order == 2:
        raw = math.sqrt(4.0 * t ** 3 * alpha / eps)
        budget = (
            "eps/4 formula error, eps/4r per potential and per full kinetic step, "
            "eps/8r per half kinetic step"
        )
    else:
        raw = (12.0 * t ** 5 * alpha / eps) ** 0.25
        budget = "eps/12 formula error, eps/12r per potential (5r) and kinetic (6r) exponential"
    return TrotterPlan(order=order, r=max(1, math.ceil(raw)), eps=eps, t=t, budget=budget)


def cost_trotter(
    spec: SystemSpec,
    order: int,
    eps: float,
    t: float,
    kickback_constant: str = "lemma8",
    include_internal: bool = False,
) -> CostReport:
    """Full product-formula cost at the given order.

    Order 1 runs r kinetic and r potential exponentials at eps/3r each.
    Order 2 runs r potential exponentials at eps/4r, r-1 full kinetic steps
    at eps/4r, and 2 half steps at eps/8r (r+1 kinetic calls in total, all
    sharing one phase register). Order 4 runs 5r potential and 6r kinetic
    exponentials at eps/12r, the kinetic ones sized for the longest Suzuki
    coefficient.
    """
    plan = plan_trotter(spec, order, eps, t)
    r = plan.r
    m = spec.lattice.m
    dm = spec.lattice.d * m

    breakdown: dict = {}
    flags: list[str] = []
    if order == 1:
        kin, registers, kin_flags = _exp_T_parts(spec, eps / (3 * r), t / r, kickback_constant)
        pot, _, pot_flags = _exp_V_compact_parts(spec, eps / (3 * r))
        _merge(breakdown, kin, r)
        _merge(breakdown, pot, r)
        flags.extend(kin_flags)
        flags.extend(pot_flags)
    elif order == 2:
        pot, _, pot_flags = _exp_V_compact_parts(spec, eps / (4 * r))
        kin_full, registers, kin_flags = _exp_T_parts(
            spec, eps / (4 * r), t / r, kickback_constant
        )
        kin_half, _, half_flags = _exp_T_parts(
            spec, eps / (8 * r), t / (2 * r), kickback_constant
        )
        _merge(breakdown, pot, r)
        _merge(breakdown, kin_full, r - 1)
        _merge(breakdown, kin_half, 2)
        flags.extend(pot_flags)
        flags.extend(kin_flags)
        flags.extend(half_flags)
    else:
        pot, _, pot_flags = _exp_V_compact_parts(spec, eps / (12 * r))
        kin, registers, kin_flags = _exp_T_parts(
            spec, eps / (12 * r), (t / r) * _S4_LONGEST, kickback_constant
        )
        _merge(breakdown, pot, 5 * r)
        _merge(breakdown, kin, 6 * r)
        flags.extend(pot_flags)
        flags.extend(kin_flags)

    bq = registers["b_QFT"]
    bd = registers["b_DIAG"]
    ancilla = bq + bd + max(2 * bq - 1, bd, m * (m - 1), dm - 1)
    report = _finalize(
        breakdown,
        system_qubits(spec, include_internal),
        ancilla,
        registers,
        tuple(dict.fromkeys(flags)),
    )
    return report
