import numpy as np
import pytest

from pionless_qre.desk.verify import (
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
from pionless_qre.params import HamiltonianParams, LatticeConfig, SystemSpec


def _spec(eta, d, m):
    return SystemSpec(HamiltonianParams(), LatticeConfig(d=d, m=m), eta=eta)


def test_potential_circuit_matches_oracle():
    res = verify_potential(_spec(2, 1, 2))
    assert res.passed
    assert res.measured < 1e-10
    assert res.bound == 1e-10
    assert "potential" in res.case


def test_kinetic_circuit_matches_oracle():
    res = verify_kinetic(_spec(1, 1, 2))
    assert res.passed
    assert res.measured < 1e-10


def test_umatch_circuit_is_exact():
    res = verify_umatch(_spec(3, 1, 1))
    assert res.passed
    assert res.measured == 0.0


def test_phase_kickback_within_budget():
    res = verify_phase_kickback(_spec(1, 1, 2), t=0.1, eps=0.05)
    assert res.passed
    assert res.measured <= 0.05
    assert res.bound == 0.05


def test_phase_kickback_register_cap():
    # a 1e-9 budget would size a phase register far beyond desk scale
    with pytest.raises(ValueError):
        verify_phase_kickback(_spec(1, 1, 2), t=0.1, eps=1e-9)


def test_failed_checks_come_back_red():
    # demanding more than double precision can deliver must not pass
    res = verify_block_encoding(_spec(2, 1, 1), tol=1e-16)
    assert not res.passed
    assert res.measured > res.bound


def test_block_encoding_matches_hamiltonian():
    res = verify_block_encoding(_spec(2, 1, 1))
    assert res.passed
    assert res.measured < 1e-8


def test_trotter_bound_single_sample():
    res = verify_trotter_bound(_spec(2, 1, 1), order=2, t=0.001, r=3)
    assert res.passed
    assert res.measured <= res.bound


def test_trotter_bound_suite_deterministic():
    first = trotter_bound_suite(orders=(1, 2), samples_per=2, seed=99)
    second = trotter_bound_suite(orders=(1, 2), samples_per=2, seed=99)
    # 3 instances x 2 orders x 2 samples
    assert len(first) == 12
    assert all(r.passed for r in first)
    assert [r.measured for r in first] == [r.measured for r in second]


def test_registry_names_and_filtering():
    cases = registry_cases()
    assert len(cases) == 27
    families = {name.split("/")[0] for name in cases}
    assert families == {
        "potential",
        "kinetic",
        "umatch",
        "kickback",
        "block",
        "projector",
        "seminorm",
        "trotter",
    }
    results = run_cases("umatch/eta2")
    assert len(results) == 1
    assert isinstance(results[0], VerificationResult)
    assert results[0].passed


def test_seminorm_registry_cases_pass():
    for res in run_cases("seminorm/"):
        assert res.passed, res
        assert res.measured <= res.bound * (1 + 1e-9) + 1e-15


def test_projector_registry_cases_pass():
    for res in run_cases("projector/"):
        assert res.passed, res
