"""Resource estimates and desk-scale verification for lattice nuclear
dynamics with contact interactions."""

from .params import (
    HamiltonianParams,
    LatticeConfig,
    SystemSpec,
    TimeSpec,
    crossing_time,
    kinetic_coefficient,
    lambda_T,
    load_params,
    response_time,
    spectral_span,
)
from .norms import CommutatorBounds, commutator_bounds, max_couples, max_triples, potential_norm_bounds
from .trotter import CostReport, Tally, cost_exp_T, cost_exp_V_compact, cost_exp_V_separate, cost_trotter, plan_trotter
from .lcu import BlockEncodingReport, QspReport, lambda_H_lcu, lambda_V_lcu, lcu_H, lcu_T, lcu_V, qsp_evolution

__all__ = [
    "HamiltonianParams",
    "LatticeConfig",
    "SystemSpec",
    "TimeSpec",
    "crossing_time",
    "kinetic_coefficient",
    "lambda_T",
    "load_params",
    "response_time",
    "spectral_span",
    "CommutatorBounds",
    "commutator_bounds",
    "max_couples",
    "max_triples",
    "potential_norm_bounds",
    "CostReport",
    "Tally",
    "cost_exp_T",
    "cost_exp_V_compact",
    "cost_exp_V_separate",
    "cost_trotter",
    "plan_trotter",
    "BlockEncodingReport",
    "QspReport",
    "lambda_H_lcu",
    "lambda_V_lcu",
    "lcu_H",
    "lcu_T",
    "lcu_V",
    "qsp_evolution",
]

__version__ = "0.1.0"
