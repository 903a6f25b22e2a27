"""Ideal-gate circuit models.

The simulator applies exact gates to a dense state vector; wire w is bit w
of the basis index, so wire 0 is least significant. Spatial registers are
laid out particle-major: particle i, axis a, bit k sits on wire
(i d + a) m + k, with bit k carrying weight 2^k. Spin and isospin labels
never enter a circuit; the desk circuits act on spatial wires plus ancilla.

Rz follows the convention Rz(theta) = diag(1, exp(-i theta / 2)), so a Z
gate is Rz(2 pi) and a phase exp(-i phi) on a marked state is Rz(2 phi).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from ..lcu import lambda_H_lcu, lambda_V_lcu
from ..params import SystemSpec, kinetic_coefficient, lambda_T

_NORM_TOL = 1e-12
_INJECT_TOL = 1e-12


@dataclass(frozen=True)
class XGate:
    wire: int


@dataclass(frozen=True)
class CNot:
    control: int
    target: int


@dataclass(frozen=True)
class MCX:
    """Multi-controlled X; polarity[i] is the control value wire i must
    hold for the target to flip."""

    controls: tuple
    polarity: tuple
    target: int


@dataclass(frozen=True)
class Swap:
    a: int
    b: int


@dataclass(frozen=True)
class CSwap:
    control: int
    a: int
    b: int


@dataclass(frozen=True)
class Rz:
    theta: float
    wire: int


@dataclass(frozen=True)
class CRz:
    theta: float
    control: int
    wire: int


@dataclass(frozen=True)
class QftBlock:
    """Exact DFT on a contiguous ascending run of wires, F[j, k] =
    exp(2 pi i j k / M) / sqrt(M) on the register value."""

    wires: tuple
    inverse: bool = False


@dataclass(frozen=True)
class StateInjection:
    """Replace |0...0> on a contiguous ascending register with the given
    amplitudes. The register must hold |0...0>; anything else is an error.
    This stands in for a state-preparation unitary whose action off the
    zero state is irrelevant to the construction under test."""

    wires: tuple
    amplitudes: tuple


_CLASSICAL = (XGate, CNot, MCX, Swap, CSwap)


@dataclass
class GateSequence:
    """An ordered gate list on n_wires wires, built through the helper
    methods so wire indices are validated once."""

    n_wires: int
    ops: list = field(default_factory=list)

    def _check(self, *wires):
        seen = set()
        for w in wires:
            if not 0 <= w < self.n_wires:
                raise ValueError(f"wire {w} outside [0, {self.n_wires})")
            if w in seen:
                raise ValueError(f"wire {w} repeated in one gate")
            seen.add(w)

    def x(self, wire):
        self._check(wire)
        self.ops.append(XGate(wire))

    def cnot(self, control, target):
        self._check(control, target)
        self.ops.append(CNot(control, target))

    def mcx(self, controls, target, polarity=None):
        controls = tuple(controls)
        polarity = tuple(polarity) if polarity is not None else (1,) * len(controls)
        if len(polarity) != len(controls):
            raise ValueError("one polarity bit per control")
        if not controls:
            raise ValueError("mcx needs at least one control")
        self._check(*controls, target)
        self.ops.append(MCX(controls, polarity, target))

    def toffoli(self, c1, c2, target):
        self.mcx((c1, c2), target)

    def swap(self, a, b):
        self._check(a, b)
        self.ops.append(Swap(a, b))

    def cswap(self, control, a, b):
        self._check(control, a, b)
        self.ops.append(CSwap(control, a, b))

    def rz(self, theta, wire):
        self._check(wire)
        self.ops.append(Rz(float(theta), wire))

    def crz(self, theta, control, wire):
        self._check(control, wire)
        self.ops.append(CRz(float(theta), control, wire))

    def qft(self, wires, inverse=False):
        wires = tuple(wires)
        self._check(*wires)
        if list(wires) != list(range(wires[0], wires[0] + len(wires))):
            raise ValueError("qft register must be contiguous ascending wires")
        self.ops.append(QftBlock(wires, inverse))

    def inject(self, wires, amplitudes):
        wires = tuple(wires)
        self._check(*wires)
        if list(wires) != list(range(wires[0], wires[0] + len(wires))):
            raise ValueError("injection register must be contiguous ascending wires")
        amps = np.asarray(amplitudes, dtype=complex)
        if amps.shape != (2 ** len(wires),):
            raise ValueError("amplitude vector must cover the register")
        if abs(np.vdot(amps, amps) - 1.0) > 1e-12:
            raise ValueError("injected state must be normalized")
        self.ops.append(StateInjection(wires, tuple(amps)))

    def extend(self, other: "GateSequence"):
        if other.n_wires != self.n_wires:
            raise ValueError("wire counts differ")
        self.ops.extend(other.ops)

    def inverse(self) -> "GateSequence":
        """Reverse the sequence, inverting each gate. Injections have no
        inverse in this model."""
        inv = GateSequence(self.n_wires)
        for op in reversed(self.ops):
            if isinstance(op, _CLASSICAL):
                inv.ops.append(op)
            elif isinstance(op, Rz):
                inv.ops.append(Rz(-op.theta, op.wire))
            elif isinstance(op, CRz):
                inv.ops.append(CRz(-op.theta, op.control, op.wire))
            elif isinstance(op, QftBlock):
                inv.ops.append(QftBlock(op.wires, not op.inverse))
            else:
                raise ValueError(f"cannot invert {type(op).__name__}")
        return inv

    @property
    def gate_count(self) -> int:
        return len(self.ops)


class Simulator:
    """Dense state-vector execution of a GateSequence."""

    def __init__(self, n_wires: int):
        if n_wires < 1 or n_wires > 26:
            raise ValueError(f"wire count {n_wires} outside the desk range")
        self.n_wires = n_wires
        self.dim = 1 << n_wires

    def _bit(self, idx, wire):
        return (idx >> wire) & 1

    def _apply(self, op, psi):
        idx = np.arange(self.dim)
        if isinstance(op, XGate):
            return psi[idx ^ (1 << op.wire)]
        if isinstance(op, CNot):
            perm = idx ^ (((idx >> op.control) & 1) << op.target)
            return psi[perm]
        if isinstance(op, MCX):
            sel = np.ones(self.dim, dtype=bool)
            for c, p in zip(op.controls, op.polarity):
                sel &= ((idx >> c) & 1) == p
            perm = idx.copy()
            perm[sel] ^= 1 << op.target
            return psi[perm]
        if isinstance(op, Swap):
            differ = ((idx >> op.a) ^ (idx >> op.b)) & 1
            perm = idx ^ (differ * ((1 << op.a) | (1 << op.b)))
            return psi[perm]
        if isinstance(op, CSwap):
            differ = (((idx >> op.a) ^ (idx >> op.b)) & 1) & ((idx >> op.control) & 1)
            perm = idx ^ (differ * ((1 << op.a) | (1 << op.b)))
            return psi[perm]
        if isinstance(op, Rz):
            out = psi.copy()
            mask = ((idx >> op.wire) & 1) == 1
            out[mask] *= np.exp(-0.5j * op.theta)
            return out
        if isinstance(op, CRz):
            out = psi.copy()
            mask = (((idx >> op.wire) & 1) == 1) & (((idx >> op.control) & 1) == 1)
            out[mask] *= np.exp(-0.5j * op.theta)
            return out
        if isinstance(op, QftBlock):
            s = op.wires[0]
            M = 1 << len(op.wires)
            low = 1 << s
            high = self.dim // (M * low)
            j = np.arange(M)
            F = np.exp(2j * np.pi * np.outer(j, j) / M) / math.sqrt(M)
            if op.inverse:
                F = F.conj().T
            block = psi.reshape(high, M, low)
            out = np.tensordot(F, block, axes=(1, 1)).transpose(1, 0, 2)
            return np.ascontiguousarray(out).reshape(-1)
        if isinstance(op, StateInjection):
            s = op.wires[0]
            Kdim = 1 << len(op.wires)
            low = 1 << s
            high = self.dim // (Kdim * low)
            block = psi.reshape(high, Kdim, low)
            if np.abs(block[:, 1:, :]).max(initial=0.0) > _INJECT_TOL:
                raise ValueError("injection register is not in |0...0>")
            amps = np.asarray(op.amplitudes)
            out = amps[None, :, None] * block[:, 0:1, :]
            return out.reshape(-1)
        raise TypeError(f"unknown gate {type(op).__name__}")

    def run(self, seq: GateSequence, state=None) -> np.ndarray:
        """Apply the sequence. `state` is a basis index (default 0) or a
        full vector; the result is checked to stay normalized."""
        if seq.n_wires != self.n_wires:
            raise ValueError("sequence wire count does not match simulator")
        if state is None:
            state = 0
        if np.isscalar(state):
            psi = np.zeros(self.dim, dtype=complex)
            psi[int(state)] = 1.0
        else:
            psi = np.asarray(state, dtype=complex).copy()
            if psi.shape != (self.dim,):
                raise ValueError("state vector has the wrong dimension")
        for op in seq.ops:
            psi = self._apply(op, psi)
        norm = float(np.vdot(psi, psi).real)
        if abs(norm - 1.0) > 1e-10:
            raise ValueError(f"state norm drifted to {norm}")
        return psi

    def classical_map(self, seq: GateSequence) -> np.ndarray:
        """Basis-state image table for sequences of classical gates only."""
        if seq.n_wires != self.n_wires:
            raise ValueError("sequence wire count does not match simulator")
        images = np.arange(self.dim)
        for op in seq.ops:
            if isinstance(op, XGate):
                images ^= 1 << op.wire
            elif isinstance(op, CNot):
                images ^= ((images >> op.control) & 1) << op.target
            elif isinstance(op, MCX):
                sel = np.ones(self.dim, dtype=np.int64)
                for c, p in zip(op.controls, op.polarity):
                    sel &= ((images >> c) & 1) == p
                images ^= sel << op.target
            elif isinstance(op, Swap):
                differ = ((images >> op.a) ^ (images >> op.b)) & 1
                images ^= differ * ((1 << op.a) | (1 << op.b))
            elif isinstance(op, CSwap):
                differ = (((images >> op.a) ^ (images >> op.b)) & 1) & (
                    (images >> op.control) & 1
                )
                images ^= differ * ((1 << op.a) | (1 << op.b))
            else:
                raise TypeError(f"{type(op).__name__} is not a classical gate")
        return images


def spatial_wire(spec: SystemSpec, particle: int, axis: int, bit: int) -> int:
    d, m = spec.lattice.d, spec.lattice.m
    return (particle * d + axis) * m + bit


def _particle_block(spec: SystemSpec, particle: int) -> range:
    dm = spec.lattice.d * spec.lattice.m
    return range(particle * dm, (particle + 1) * dm)


def potential_phase_circuit(spec: SystemSpec, t: float) -> GateSequence:
    """Diagonal phase exp(-i t V) on the spatial wires: per coincident pair
    a phase exp(-i C t), per coincident triple exp(-i G t), each applied by
    marking the coincidence on a scratch wire."""
    eta, dm = spec.eta, spec.lattice.d * spec.lattice.m
    ph = eta * dm
    seq = GateSequence(eta * dm + 1)

    def xor_into(i, j):
        for b in range(dm):
            seq.cnot(i * dm + b, j * dm + b)

    def marked_phase(zero_blocks, phi):
        controls = [w for blk in zero_blocks for w in blk]
        seq.mcx(controls, ph, polarity=(0,) * len(controls))
        seq.rz(2.0 * phi, ph)
        seq.mcx(controls, ph, polarity=(0,) * len(controls))

    for i in range(eta):
        for j in range(i + 1, eta):
            xor_into(i, j)
            marked_phase([_particle_block(spec, j)], spec.params.C * t)
            xor_into(i, j)
    for i in range(eta):
        for j in range(i + 1, eta):
            for k in range(j + 1, eta):
                xor_into(i, j)
                xor_into(i, k)
                marked_phase(
                    [_particle_block(spec, j), _particle_block(spec, k)],
                    spec.params.G * t,
                )
                xor_into(i, k)
                xor_into(i, j)
    return seq


def _momentum_weights(m: int):
    """Signed bit weights of the folded momentum: bit j carries 2^j except
    the top bit, which carries -2^(m-1)."""
    c = [2 ** j for j in range(m - 1)] + [-(2 ** (m - 1))]
    return c


def kinetic_evolution_circuit(spec: SystemSpec, t: float) -> GateSequence:
    """exp(-i t T) on the spatial wires: per particle and axis, a DFT, a
    Z-string phase pattern for K q^2, and the inverse DFT. The scalar parts
    accumulate into one global phase emitted on the scratch wire."""
    eta, d, m = spec.eta, spec.lattice.d, spec.lattice.m
    K = kinetic_coefficient(spec)
    c = _momentum_weights(m)
    S = sum(c)
    ph = eta * d * m
    seq = GateSequence(eta * d * m + 1)
    phase_acc = 0.0

    def zrot(phi, wire):
        # exp(-i phi Z) = exp(-i phi) Rz(-4 phi)
        nonlocal phase_acc
        seq.rz(-4.0 * phi, wire)
        phase_acc += phi

    for i in range(eta):
        for a in range(d):
            wires = [spatial_wire(spec, i, a, b) for b in range(m)]
            seq.qft(wires)
            for j in range(m):
                zrot(-t * K * S * c[j] / 2.0, wires[j])
            for j in range(m):
                for k in range(j + 1, m):
                    seq.cnot(wires[j], wires[k])
                    zrot(t * K * c[j] * c[k] / 2.0, wires[k])
                    seq.cnot(wires[j], wires[k])
            phase_acc += t * K * (S ** 2 + sum(cj ** 2 for cj in c)) / 4.0
            seq.qft(wires, inverse=True)
    # realize exp(-i phase_acc): Rz conjugated by X puts the phase on |0>
    seq.x(ph)
    seq.rz(2.0 * phase_acc, ph)
    seq.x(ph)
    return seq


def umatch_circuit(spec: SystemSpec) -> GateSequence:
    """Count how many other particles share particle 0's site, adding the
    count into the two-wire register S. Layout: spatial wires, then S0, S1,
    then the match scratch."""
    eta, dm = spec.eta, spec.lattice.d * spec.lattice.m
    if eta > 4:
        raise ValueError("the two-bit count register supports at most 4 particles")
    if eta < 2:
        raise ValueError("match counting needs at least two particles")
    s0 = eta * dm
    s1 = s0 + 1
    mu = s0 + 2
    seq = GateSequence(eta * dm + 3)

    def mark_match(j):
        for b in range(dm):
            seq.cnot(b, j * dm + b)
        block = list(_particle_block(spec, j))
        seq.mcx(block, mu, polarity=(0,) * dm)
        for b in range(dm):
            seq.cnot(b, j * dm + b)

    for j in range(1, eta):
        mark_match(j)
        seq.toffoli(mu, s0, s1)
        seq.cnot(mu, s0)
        mark_match(j)
    return seq


@dataclass(frozen=True)
class BlockEncodingCircuit:
    """Prepare/select pair for the full-Hamiltonian block encoding on a
    one-axis lattice, plus the layout needed to read the encoded block."""

    n_wires: int
    prepare: GateSequence
    select: GateSequence
    system_wires: tuple
    lam: float


def block_encoding_circuit(spec: SystemSpec) -> BlockEncodingCircuit:
    """Desk-scale block encoding of H for d = 1 and 2 to 4 particles.

    Registers after the system wires: tv picks kinetic vs potential, f is a
    one-hot particle selector, alpha picks the Z-string term, l picks the
    linear or quadratic coincidence branch, p and q are the weight-1/3
    registers that turn match counts into expectation values, b is the
    sign wire, S the match count, and mu/a1/a2/ph are scratch."""
    eta, d, m = spec.eta, spec.lattice.d, spec.lattice.m
    C, G = spec.params.C, spec.params.G
    if d != 1:
        raise ValueError("the desk block encoding is built for d = 1")
    if not 2 <= eta <= 4:
        raise ValueError("the desk block encoding supports 2 to 4 particles")
    if C > 0 or G < 0:
        raise ValueError("the coincidence branches expect C <= 0 <= G")
    lam_V = lambda_V_lcu(spec)
    if lam_V <= 0:
        raise ValueError("zero potential norm: encode the kinetic term alone")
    lam_T = lambda_T(spec)
    lam = lambda_H_lcu(spec)

    c = _momentum_weights(m)
    Ssum = sum(c)
    # Z-string expansion of q^2 in units of K: constant, singles, doubles
    terms = [(abs(Ssum ** 2 + sum(cj ** 2 for cj in c)) / 4.0, "const", (), 1)]
    assert Ssum ** 2 + sum(cj ** 2 for cj in c) > 0
    for j in range(m):
        coeff = -Ssum * c[j] / 2.0
        terms.append((abs(coeff), "z", (j,), 1 if coeff >= 0 else -1))
    for j in range(m):
        for k in range(j + 1, m):
            coeff = c[j] * c[k] / 2.0
            terms.append((abs(coeff), "zz", (j, k), 1 if coeff >= 0 else -1))
    axis_norm = sum(w for w, *_ in terms)
    assert abs(axis_norm - 4.0 ** (m - 1)) < 1e-9
    a_bits = max(1, math.ceil(math.log2(len(terms))))

    sys_n = eta * m
    tv = sys_n
    f0 = tv + 1
    alpha0 = f0 + eta
    lw = alpha0 + a_bits
    pw = lw + 1
    qw = pw + 1
    bw = qw + 1
    s0 = bw + 1
    s1 = s0 + 1
    mu = s1 + 1
    a1 = mu + 1
    a2 = a1 + 1
    ph = a2 + 1
    n_wires = ph + 1

    prepare = GateSequence(n_wires)
    prepare.inject((tv,), [math.sqrt(lam_T / lam), math.sqrt(lam_V / lam)])
    f_amps = np.zeros(2 ** eta)
    for i in range(eta):
        f_amps[1 << i] = 1.0 / math.sqrt(eta)
    prepare.inject(range(f0, f0 + eta), f_amps)
    alpha_amps = np.zeros(2 ** a_bits)
    for u, (w, *_) in enumerate(terms):
        alpha_amps[u] = math.sqrt(w / axis_norm)
    prepare.inject(range(alpha0, alpha0 + a_bits), alpha_amps)
    amp0 = math.sqrt(3.0 * G / (3.0 * abs(C) + 4.0 * G))
    amp1 = math.sqrt((3.0 * abs(C) + G) / (3.0 * abs(C) + 4.0 * G))
    prepare.inject((lw,), [amp0, amp1])
    kappa = [1.0 / math.sqrt(3.0), math.sqrt(2.0 / 3.0)]
    prepare.inject((pw,), kappa)
    prepare.inject((qw,), kappa)
    prepare.inject((bw,), [1.0 / math.sqrt(2.0)] * 2)

    sel = GateSequence(n_wires)

    def marked_minus(controls, polarity):
        sel.mcx(controls, ph, polarity=polarity)
        sel.rz(2.0 * math.pi, ph)
        sel.mcx(controls, ph, polarity=polarity)

    def route(seq_):
        for i in range(1, eta):
            for b in range(m):
                seq_.cswap(f0 + i, b, i * m + b)

    route(sel)
    slot0 = list(range(m))
    sel.qft(slot0)
    for u, (w, kind, bits, sign) in enumerate(terms):
        if w == 0.0:
            continue
        pattern = [(tv, 0)] + [(alpha0 + k, (u >> k) & 1) for k in range(a_bits)]
        controls = [cw for cw, _ in pattern]
        polarity = [cp for _, cp in pattern]
        if kind == "const" and sign < 0:
            marked_minus(controls, polarity)
        elif kind == "z":
            # plus or minus Z on the slot-0 bit: -1 where the bit matches
            # the sign's marked value
            marked_minus(controls + [slot0[bits[0]]], polarity + [1 if sign > 0 else 0])
        elif kind == "zz":
            sel.cnot(slot0[bits[0]], slot0[bits[1]])
            marked_minus(controls + [slot0[bits[1]]], polarity + [1 if sign > 0 else 0])
            sel.cnot(slot0[bits[0]], slot0[bits[1]])
    sel.qft(slot0, inverse=True)

    match = GateSequence(n_wires)

    def mark_match(j):
        for b in range(m):
            match.cnot(b, j * m + b)
        block = [j * m + b for b in range(m)]
        match.mcx(block, mu, polarity=(0,) * m)
        for b in range(m):
            match.cnot(b, j * m + b)

    for j in range(1, eta):
        mark_match(j)
        match.toffoli(mu, s0, s1)
        match.cnot(mu, s0)
        mark_match(j)
    sel.extend(match)

    def copy_count(kappa_wire, target):
        sel.mcx((kappa_wire, s0), target, polarity=(0, 1))
        sel.mcx((kappa_wire, s1), target, polarity=(1, 1))

    copy_count(pw, a1)
    copy_count(qw, a2)
    # linear branch: Z X Z^a1 on b, expectation -a1, carries the C < 0 sign
    marked_minus((tv, lw, a1, bw), (1, 1, 1, 1))
    sel.mcx((tv, lw), bw, polarity=(1, 1))
    marked_minus((tv, lw, bw), (1, 1, 1))
    # quadratic branch: Z Z^(a1 a2) on b, expectation a1 a2
    marked_minus((tv, lw, bw), (1, 0, 1))
    marked_minus((tv, lw, a1, a2, bw), (1, 0, 1, 1, 1))
    copy_count(qw, a2)
    copy_count(pw, a1)

    sel.extend(match.inverse())
    route_back = GateSequence(n_wires)
    route(route_back)
    sel.extend(route_back.inverse())

    return BlockEncodingCircuit(
        n_wires=n_wires,
        prepare=prepare,
        select=sel,
        system_wires=tuple(range(sys_n)),
        lam=lam,
    )
