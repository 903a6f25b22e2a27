"""Desk-scale verification: dense operators, ideal-gate circuit models, and
the checks that tie circuit constructions back to exact linear algebra."""

from .basis import BasisIndex, single_particle_dim, spatial_dim, total_dim
from .dense import (
    DESK_DIM_LIMIT,
    DenseOperator,
    antisymmetrizer,
    build_exact_H,
    build_exact_T,
    build_exact_V,
    seminorm_oracle,
    slater_basis,
)
from .circuits import (
    BlockEncodingCircuit,
    GateSequence,
    Simulator,
    block_encoding_circuit,
    kinetic_evolution_circuit,
    potential_phase_circuit,
    umatch_circuit,
)
from .verify import (
    VerificationResult,
    registry_cases,
    run_cases,
    trotter_bound_suite,
    verify_block_encoding,
    verify_kinetic,
    verify_phase_kickback,
    verify_potential,
    verify_trotter_bound,
    verify_umatch,
)

__all__ = [
    "BasisIndex",
    "single_particle_dim",
    "spatial_dim",
    "total_dim",
    "DESK_DIM_LIMIT",
    "DenseOperator",
    "antisymmetrizer",
    "build_exact_H",
    "build_exact_T",
    "build_exact_V",
    "seminorm_oracle",
    "slater_basis",
    "BlockEncodingCircuit",
    "GateSequence",
    "Simulator",
    "block_encoding_circuit",
    "kinetic_evolution_circuit",
    "potential_phase_circuit",
    "umatch_circuit",
    "VerificationResult",
    "registry_cases",
    "run_cases",
    "trotter_bound_suite",
    "verify_block_encoding",
    "verify_kinetic",
    "verify_phase_kickback",
    "verify_potential",
    "verify_trotter_bound",
    "verify_umatch",
]
