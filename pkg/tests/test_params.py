import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pionless_qre.params import (
    HBARC_MEV_FM,
    HamiltonianParams,
    LatticeConfig,
    SystemSpec,
    TimeSpec,
    crossing_time,
    dump_params,
    kinetic_coefficient,
    lambda_T,
    load_params,
    response_time,
    spectral_span,
)


def _spec(eta=16, d=3, m=3, **kw):
    return SystemSpec(HamiltonianParams(**kw), LatticeConfig(d=d, m=m), eta=eta)


def test_default_interaction_values():
    p = HamiltonianParams()
    assert p.kinetic_scale == 10.58
    assert p.C == -98.23
    assert p.G == 127.84
    assert p.a == 1.4
    assert p.mu == 939.0


def test_lattice_derived_sizes():
    lat = LatticeConfig(d=3, m=3)
    assert lat.M == 8
    # Omega = 4 M^d = 4 * 512
    assert lat.Omega == 2048


def test_lattice_validation():
    with pytest.raises(ValueError):
        LatticeConfig(d=0, m=3)
    with pytest.raises(ValueError):
        LatticeConfig(d=3, m=0)


def test_spec_particle_validation():
    lat = LatticeConfig(d=1, m=1)
    # eta = 0 builds (useful as a degenerate spec), negatives do not
    SystemSpec(HamiltonianParams(), lat, eta=0)
    with pytest.raises(ValueError):
        SystemSpec(HamiltonianParams(), lat, eta=-1)
    # more fermions than single-particle states cannot exist
    with pytest.raises(ValueError):
        SystemSpec(HamiltonianParams(), lat, eta=9)


def test_kinetic_coefficient_values():
    # K = kinetic_scale (2 pi / 2^m)^2: m=3 gives 10.58 (pi/4)^2 = 6.526276
    assert np.isclose(kinetic_coefficient(_spec(m=3)), 6.526275910220338)
    # m=1 gives 10.58 pi^2 = 104.420415
    assert np.isclose(kinetic_coefficient(_spec(d=1, m=1, eta=2)), 104.42041456352541)


def test_lambda_T_values():
    # d K eta 4^(m-1) = 3 * 6.526276 * 16 * 16 = 5012.18
    assert np.isclose(lambda_T(_spec(eta=16)), 5012.17989904922)
    assert np.isclose(lambda_T(_spec(eta=40)), 12530.44974762305)


def test_lambda_T_is_m_independent():
    # K carries 4^-m, so d K eta 4^(m-1) cancels the lattice spacing exactly
    vals = [lambda_T(_spec(eta=16, m=m)) for m in (1, 2, 3, 6, 10)]
    assert all(v == vals[0] for v in vals)


def test_crossing_time_value():
    # a M / hbar-c * sqrt(mu / 2E) with a=1.4 fm, M=8, E=10 MeV
    t = crossing_time(_spec(eta=16), 10.0)
    assert np.isclose(t, 1.4 * 8 / HBARC_MEV_FM * math.sqrt(939.0 / 20.0))
    assert np.isclose(t, 0.3889102154365305)
    with pytest.raises(ValueError):
        crossing_time(_spec(), 0.0)


def test_spectral_span_value():
    # lambda_T + combined potential bound + 18 eta
    # = 5012.1799 + 834.25 + 288 = 6134.4299
    assert np.isclose(spectral_span(_spec(eta=16)), 6134.42989904922)


def test_response_time_values():
    # ceil(6134.43 / 100) = 62 bins; (62 - 1) 2 pi / 6134.43 = 0.0624792
    t16 = response_time(_spec(eta=16), 100.0)
    assert np.isclose(t16, 61 * 2 * math.pi / 6134.42989904922)
    assert np.isclose(t16, 0.0624792, rtol=1e-5)
    t40 = response_time(_spec(eta=40), 100.0)
    assert np.isclose(t40, 0.0627524, rtol=1e-5)
    # moving 16 -> 40 particles shifts the response time by under 1 percent
    assert abs(t40 - t16) / t16 < 0.01
    with pytest.raises(ValueError):
        response_time(_spec(), -1.0)


def test_response_time_window_wider_than_span():
    # a window wider than the whole span leaves nothing to resolve
    assert response_time(_spec(eta=16), 1e7) == 0.0


def test_time_spec_resolution():
    spec = _spec(eta=16)
    assert TimeSpec.explicit(0.25).resolve(spec) == 0.25
    assert TimeSpec.crossing(10.0).resolve(spec) == crossing_time(spec, 10.0)
    assert TimeSpec.response(100.0).resolve(spec) == response_time(spec, 100.0)
    with pytest.raises(ValueError):
        TimeSpec("typo", 1.0)


def test_params_file_round_trip(tmp_path):
    p = HamiltonianParams(kinetic_scale=11.1, C=-50.5, G=60.25, a=1.7, mu=940.5)
    path = tmp_path / "params.cfg"
    dump_params(p, path)
    assert load_params(path) == p


def test_params_file_rejects_unknown_keys(tmp_path):
    path = tmp_path / "params.cfg"
    path.write_text("c_mev = -98.23\nbogus_key = 1.0\n")
    with pytest.raises(ValueError):
        load_params(path)


def test_params_file_rejects_bad_values(tmp_path):
    path = tmp_path / "params.cfg"
    path.write_text("mu_mev = -939.0\n")
    with pytest.raises(ValueError):
        load_params(path)


def test_params_from_environment(tmp_path, monkeypatch):
    from pionless_qre.params import PARAMS_ENV_VAR, params_from_environment

    monkeypatch.delenv(PARAMS_ENV_VAR, raising=False)
    assert params_from_environment() == HamiltonianParams()
    path = tmp_path / "params.cfg"
    path.write_text("c_mev = -50.0\n")
    monkeypatch.setenv(PARAMS_ENV_VAR, str(path))
    assert params_from_environment() == HamiltonianParams(C=-50.0)


@settings(max_examples=50, deadline=None)
@given(
    ks=st.floats(0.1, 100),
    c=st.floats(-500, 0),
    g=st.floats(0, 500),
    a=st.floats(0.1, 10),
    mu=st.floats(1, 5000),
)
def test_params_round_trip_bit_exact(tmp_path_factory, ks, c, g, a, mu):
    p = HamiltonianParams(kinetic_scale=ks, C=c, G=g, a=a, mu=mu)
    path = tmp_path_factory.mktemp("cfg") / "p.cfg"
    dump_params(p, path)
    q = load_params(path)
    assert q.kinetic_scale == p.kinetic_scale and q.C == p.C and q.G == p.G
    assert q.a == p.a and q.mu == p.mu
