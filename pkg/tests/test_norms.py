import itertools

import numpy as np
import pytest

from pionless_qre.norms import (
    CommutatorBounds,
    M_s,
    commutator_bounds,
    max_couples,
    max_triples,
    potential_norm_bounds,
)
from pionless_qre.params import HamiltonianParams, LatticeConfig, SystemSpec


def _spec(eta=16, d=3, m=3):
    return SystemSpec(HamiltonianParams(), LatticeConfig(d=d, m=m), eta=eta)


def _best_packing(eta, r):
    """Reference maximization of sum-over-sites C(occ, r) with occupancies
    capped at 4, by explicit search over partitions of eta into parts <= 4."""
    best = 0
    # at most eta sites are ever occupied
    for counts in itertools.product(range(eta + 1), repeat=4):
        if sum((k + 1) * c for k, c in enumerate(counts)) != eta:
            continue
        total = sum(
            c * len(list(itertools.combinations(range(k + 1), r)))
            for k, c in enumerate(counts)
        )
        best = max(best, total)
    return best


@pytest.mark.parametrize("eta", range(10))
def test_max_couples_matches_packing_search(eta):
    assert max_couples(eta) == _best_packing(eta, 2)


@pytest.mark.parametrize("eta", range(10))
def test_max_triples_matches_packing_search(eta):
    assert max_triples(eta) == _best_packing(eta, 3)


def test_pair_triple_tables():
    assert [max_couples(e) for e in range(1, 10)] == [0, 1, 3, 6, 6, 7, 9, 12, 12]
    assert [max_triples(e) for e in range(1, 10)] == [0, 0, 1, 4, 4, 4, 5, 8, 8]
    with pytest.raises(ValueError):
        max_couples(-1)
    with pytest.raises(ValueError):
        max_triples(-2)


def test_potential_norm_bounds_reference_couplings():
    bounds = potential_norm_bounds(_spec(eta=16))
    # v2 = 1.5 * 16 * 98.23, v3 = 16 * 127.84
    assert np.isclose(bounds["v2"], 2357.52)
    assert np.isclose(bounds["v3"], 2045.44)
    # combined: max(98.23*8, |3C+G|*5, |6C+4G|*4)
    #         = max(785.84, 166.85*5 = 834.25, 78.02*4 = 312.08)
    assert np.isclose(bounds["combined"], 834.25)


def test_combined_bound_beats_naive_occupancies():
    # cancellation between C < 0 and G > 0 makes the combined bound much
    # tighter than v2 + v3
    b = potential_norm_bounds(_spec(eta=16))
    assert b["combined"] < 0.2 * (b["v2"] + b["v3"])


def test_occupancy_weighted_maxima():
    p = HamiltonianParams()
    # s=1: max(98.23, |2C + G/2| = 132.54, |3C + 3G/2| = 102.93)
    assert np.isclose(M_s(1, p), 132.54)
    # s=2: max(196.46, |4C + 1.5G| = 201.16, |6C + 4.5G| = 14.1)
    assert np.isclose(M_s(2, p), 201.16)
    # s=3: max(392.92, 210.56, |12C + 13.5G| = 547.08)
    assert np.isclose(M_s(3, p), 547.08)
    # s=4: max(785.84, 154.16, |24C + 40.5G| = 2820.0)
    assert np.isclose(M_s(4, p), 2820.0)
    with pytest.raises(ValueError):
        M_s(5, p)


def test_commutator_bounds_reference_values():
    # kin1 = 3 * 10.58 * pi^2 = 313.26124, alpha1 = eta * kin1 * M_1
    b2 = commutator_bounds(_spec(eta=2))
    assert np.isclose(b2.alpha1, 83039.29047749797)
    b16 = commutator_bounds(_spec(eta=16))
    assert np.isclose(b16.alpha2, 81990353.98263264)
    assert np.isclose(b16.alpha4, 84335956812118.9)


def test_commutator_bounds_linear_in_eta():
    b16 = commutator_bounds(_spec(eta=16))
    b32 = commutator_bounds(_spec(eta=32))
    assert np.isclose(b32.alpha1, 2 * b16.alpha1)
    assert np.isclose(b32.alpha2, 2 * b16.alpha2)
    assert np.isclose(b32.alpha4, 2 * b16.alpha4)


def test_commutator_bounds_lattice_independent():
    # the 4^(m-1) in the single-particle kinetic bound cancels K's 4^-m
    assert commutator_bounds(_spec(m=1)) == commutator_bounds(_spec(m=5))


def test_commutator_bounds_accessors():
    b = CommutatorBounds(alpha1=1.0, alpha2=2.0, alpha4=3.0)
    assert b.for_order(1) == 1.0
    assert b.for_order(2) == 2.0
    assert b.for_order(4) == 3.0
    with pytest.raises(ValueError):
        b.for_order(3)
    with pytest.raises(ValueError):
        CommutatorBounds(alpha1=-1.0, alpha2=0.0, alpha4=0.0)
