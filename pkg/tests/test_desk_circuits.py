import math

import numpy as np
import pytest

from pionless_qre.desk.circuits import (
    GateSequence,
    Simulator,
    spatial_wire,
)
from pionless_qre.params import HamiltonianParams, LatticeConfig, SystemSpec


def _spec(eta, d, m):
    return SystemSpec(HamiltonianParams(), LatticeConfig(d=d, m=m), eta=eta)


def test_x_and_cnot_semantics():
    seq = GateSequence(2)
    seq.x(0)
    seq.cnot(0, 1)
    images = Simulator(2).classical_map(seq)
    # |00> -> |01> -> |11> (wire 0 is the low bit)
    assert images[0b00] == 0b11
    assert images[0b10] == 0b01


def test_mcx_polarity():
    seq = GateSequence(3)
    seq.mcx((0, 1), 2, polarity=(1, 0))
    images = Simulator(3).classical_map(seq)
    # fires only when wire0 = 1 and wire1 = 0
    assert images[0b001] == 0b101
    assert images[0b011] == 0b011
    assert images[0b000] == 0b000
    with pytest.raises(ValueError):
        GateSequence(3).mcx((0, 1), 2, polarity=(1,))
    with pytest.raises(ValueError):
        GateSequence(3).mcx((), 2)


def test_swap_and_cswap():
    seq = GateSequence(3)
    seq.swap(0, 1)
    seq.cswap(1, 0, 2)
    images = Simulator(3).classical_map(seq)
    # |001>: swap -> |010>, cswap control wire1=1 swaps wires 0,2 -> |010>
    assert images[0b001] == 0b010
    # |011>: swap leaves it, cswap fires: wires 0,2 exchange -> |110>
    assert images[0b011] == 0b110


def test_rz_convention():
    # Rz(theta) = diag(1, exp(-i theta / 2)) on the wire
    theta = 0.7
    seq = GateSequence(1)
    seq.rz(theta, 0)
    sim = Simulator(1)
    assert np.isclose(sim.run(seq, 0)[0], 1.0)
    assert np.isclose(sim.run(seq, 1)[1], np.exp(-0.5j * theta))
    # Rz(2 pi) is a plain Z
    seq_z = GateSequence(1)
    seq_z.rz(2 * math.pi, 0)
    assert np.isclose(sim.run(seq_z, 1)[1], -1.0)


def test_crz_fires_on_control():
    theta = 1.1
    seq = GateSequence(2)
    seq.crz(theta, 0, 1)
    sim = Simulator(2)
    assert np.isclose(sim.run(seq, 0b10)[0b10], 1.0)
    assert np.isclose(sim.run(seq, 0b11)[0b11], np.exp(-0.5j * theta))


def test_qft_block_matches_dft_matrix():
    seq = GateSequence(2)
    seq.qft((0, 1))
    sim = Simulator(2)
    F = np.exp(2j * np.pi * np.outer(np.arange(4), np.arange(4)) / 4) / 2.0
    for col in range(4):
        assert np.allclose(sim.run(seq, col), F[:, col], atol=1e-12)


def test_qft_block_inverse_round_trip():
    seq = GateSequence(3)
    seq.qft((0, 1))
    seq.qft((0, 1), inverse=True)
    sim = Simulator(3)
    rng = np.random.default_rng(7)
    psi = rng.normal(size=8) + 1j * rng.normal(size=8)
    psi /= np.linalg.norm(psi)
    assert np.allclose(sim.run(seq, psi), psi, atol=1e-12)
    with pytest.raises(ValueError):
        GateSequence(3).qft((0, 2))


def test_state_injection():
    # kappa = (|0> + sqrt(2)|1>)/sqrt(3) on wire 0
    amps = (1.0 / math.sqrt(3), math.sqrt(2.0 / 3.0))
    seq = GateSequence(2)
    seq.inject((0,), amps)
    psi = Simulator(2).run(seq, 0)
    assert np.allclose(psi, [amps[0], amps[1], 0.0, 0.0], atol=1e-12)
    # injecting over a register that is not |0> is an execution error
    with pytest.raises(ValueError):
        Simulator(2).run(seq, 1)


def test_state_injection_validation():
    with pytest.raises(ValueError):
        GateSequence(2).inject((0,), (0.5, 0.5))  # not normalized
    with pytest.raises(ValueError):
        GateSequence(2).inject((0,), (1.0, 0.0, 0.0))  # wrong length
    with pytest.raises(ValueError):
        GateSequence(3).inject((0, 2), (1.0, 0.0, 0.0, 0.0))  # gap in register


def test_sequence_inverse_round_trip():
    seq = GateSequence(3)
    seq.x(0)
    seq.cnot(0, 1)
    seq.mcx((0, 1), 2, polarity=(1, 0))
    seq.swap(1, 2)
    seq.cswap(0, 1, 2)
    seq.rz(0.3, 1)
    seq.crz(-0.8, 0, 2)
    seq.qft((0, 1))
    both = GateSequence(3)
    both.extend(seq)
    both.extend(seq.inverse())
    sim = Simulator(3)
    rng = np.random.default_rng(13)
    psi = rng.normal(size=8) + 1j * rng.normal(size=8)
    psi /= np.linalg.norm(psi)
    assert np.allclose(sim.run(both, psi), psi, atol=1e-12)
    assert both.gate_count == 2 * seq.gate_count


def test_sequence_inverse_rejects_injection():
    seq = GateSequence(1)
    seq.inject((0,), (1.0, 0.0))
    with pytest.raises(ValueError):
        seq.inverse()


def test_classical_map_rejects_phase_gates():
    seq = GateSequence(1)
    seq.rz(0.5, 0)
    with pytest.raises(TypeError):
        Simulator(1).classical_map(seq)


def test_wire_validation():
    seq = GateSequence(3)
    with pytest.raises(ValueError):
        seq.x(3)
    with pytest.raises(ValueError):
        seq.cnot(1, 1)
    with pytest.raises(ValueError):
        GateSequence(2).extend(GateSequence(3))


def test_simulator_bounds():
    with pytest.raises(ValueError):
        Simulator(0)
    with pytest.raises(ValueError):
        Simulator(27)
    with pytest.raises(ValueError):
        Simulator(2).run(GateSequence(3))


def test_spatial_wire_layout():
    # wires pack (particle, axis, bit) with the bit fastest
    spec = _spec(2, 2, 2)
    assert spatial_wire(spec, 0, 0, 0) == 0
    assert spatial_wire(spec, 0, 0, 1) == 1
    assert spatial_wire(spec, 0, 1, 0) == 2
    assert spatial_wire(spec, 1, 0, 1) == 5
    assert spatial_wire(spec, 1, 1, 1) == 7
