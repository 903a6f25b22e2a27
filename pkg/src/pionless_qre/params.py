"""Hamiltonian parameters, lattice geometry, and simulation-time models.

Everything downstream (norm bounds, Trotter and LCU/QSP cost estimates, the
desk-scale verifier) consumes the types defined here. Energies are in MeV,
lengths in fm, times in MeV^-1 throughout.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass

# Unit conversion constant, MeV*fm. Used to turn a lattice length into an
# inverse energy when building the crossing-time estimate.
HBARC_MEV_FM = 197.3269804

# Reference couplings for a 1.4 fm lattice with nucleon mass 939 MeV.
DEFAULT_KINETIC_SCALE = 10.58  # hbar^2/(2 mu a^2), MeV
DEFAULT_C = -98.23             # two-body contact coupling, MeV
DEFAULT_G = 127.84             # three-body contact coupling, MeV
DEFAULT_A = 1.4                # lattice spacing, fm
DEFAULT_MU = 939.0             # nucleon mass, MeV

# Config-file keys (flat key/value text). Absent keys fall back to the
# defaults above.
_CONFIG_KEYS = {
    "kinetic_scale_mev": "kinetic_scale",
    "c_mev": "C",
    "g_mev": "G",
    "a_fm": "a",
    "mu_mev": "mu",
}

PARAMS_ENV_VAR = "PIONLESS_QRE_PARAMS"


@dataclass(frozen=True)
class HamiltonianParams:
    """Contact-interaction couplings and lattice constants.

    kinetic_scale is hbar^2/(2 mu a^2) in MeV; C and G are the two- and
    three-body couplings in MeV; a is the lattice spacing in fm; mu the
    nucleon mass in MeV. kinetic_scale = 0 is allowed as a degenerate
    test value.
    """

    kinetic_scale: float = DEFAULT_KINETIC_SCALE
    C: float = DEFAULT_C
    G: float = DEFAULT_G
    a: float = DEFAULT_A
    mu: float = DEFAULT_MU

    def __post_init__(self):
        if self.a <= 0:
            raise ValueError(f"lattice spacing must be positive, got {self.a}")
        if self.mu <= 0:
            raise ValueError(f"nucleon mass must be positive, got {self.mu}")
        if self.kinetic_scale < 0:
            raise ValueError(
                f"kinetic scale must be non-negative, got {self.kinetic_scale}"
            )


@dataclass(frozen=True)
class LatticeConfig:
    """Cubic lattice with 2^m sites per axis in d dimensions."""

    d: int
    m: int

    def __post_init__(self):
        if self.d < 1:
            raise ValueError(f"need at least one spatial dimension, got d={self.d}")
        if self.m < 1:
            raise ValueError(f"need at least one qubit per axis, got m={self.m}")

    @property
    def M(self) -> int:
        """Sites per axis."""
        return 2 ** self.m

    @property
    def Omega(self) -> int:
        """Single-particle states: spatial sites times 4 spin-isospin states."""
        return 4 * self.M ** self.d


@dataclass(frozen=True)
class SystemSpec:
    """A particle count on a lattice with a coupling set."""

    params: HamiltonianParams
    lattice: LatticeConfig
    eta: int

    def __post_init__(self):
        # eta = 0 is tolerated so that closed forms linear in eta can be
        # evaluated at their trivial point; estimators that need particles
        # check eta >= 1 (or >= 2) themselves.
        if self.eta < 0:
            raise ValueError(f"particle number must be non-negative, got {self.eta}")
        if self.eta > self.lattice.Omega:
            raise ValueError(
                f"eta={self.eta} exceeds the {self.lattice.Omega} single-particle "
                "states available (Pauli exclusion)"
            )


@dataclass(frozen=True)
class TimeSpec:
    """Evolution-time model: an explicit time, a lattice-crossing estimate at
    a given kinetic energy, or a response-reconstruction estimate at a given
    frequency resolution."""

    kind: str
    value: float

    _KINDS = ("explicit", "crossing", "response")

    def __post_init__(self):
        if self.kind not in self._KINDS:
            raise ValueError(f"unknown time model {self.kind!r}, expected one of {self._KINDS}")
        if self.value <= 0:
            raise ValueError(f"time-model value must be positive, got {self.value}")

    @classmethod
    def explicit(cls, t: float) -> "TimeSpec":
        return cls("explicit", t)

    @classmethod
    def crossing(cls, energy: float) -> "TimeSpec":
        return cls("crossing", energy)

    @classmethod
    def response(cls, delta_omega: float) -> "TimeSpec":
        return cls("response", delta_omega)

    def resolve(self, spec: SystemSpec) -> float:
        """Evolution time in MeV^-1 under this model for the given system."""
        if self.kind == "explicit":
            return self.value
        if self.kind == "crossing":
            return crossing_time(spec, self.value)
        return response_time(spec, self.value)


def kinetic_coefficient(spec: SystemSpec) -> float:
    """Coefficient K multiplying the squared integer momentum, in MeV.

    K = kinetic_scale * (2 pi / 2^m)^2, the prefactor of the diagonal
    kinetic term in momentum space.
    """
    m = spec.lattice.m
    return spec.params.kinetic_scale * (2.0 * math.pi / 2 ** m) ** 2


def lambda_T(spec: SystemSpec) -> float:
    """One-norm bound on the kinetic energy, d*K*eta*2^(2m-2) in MeV.

    Independent of m: K scales as 2^(-2m), so the product equals
    kinetic_scale * d * eta * pi^2.
    """
    K = kinetic_coefficient(spec)
    return spec.lattice.d * K * spec.eta * 4 ** (spec.lattice.m - 1)


def crossing_time(spec: SystemSpec, energy: float) -> float:
    """Time in MeV^-1 for a particle of the given kinetic energy (MeV) to
    cross the full lattice: a*2^m/(hbar c) * sqrt(mu/(2E))."""
    if energy <= 0:
        raise ValueError(f"crossing energy must be positive, got {energy}")
    length_fm = spec.params.a * spec.lattice.M
    return length_fm / HBARC_MEV_FM * math.sqrt(spec.params.mu / (2.0 * energy))


def spectral_span(spec: SystemSpec) -> float:
    """Upper bound on the full spectral range of H, in MeV.

    lambda_T plus the tightest combined potential bound plus 18 MeV per
    particle of spectral headroom.
    """
    from .norms import potential_norm_bounds

    return lambda_T(spec) + potential_norm_bounds(spec)["combined"] + 18.0 * spec.eta


def response_time(spec: SystemSpec, delta_omega: float) -> float:
    """Evolution time in MeV^-1 needed to resolve the response function on
    frequency bins of width delta_omega (MeV).

    t = (ceil(dH/dw) - 1) * 2 pi / dH where dH bounds the spectral span.
    Returns 0.0 when delta_omega >= dH (a single bin resolves nothing);
    callers treat a zero time as degenerate.
    """
    if delta_omega <= 0:
        raise ValueError(f"frequency resolution must be positive, got {delta_omega}")
    span = spectral_span(spec)
    bins = math.ceil(span / delta_omega)
    return (bins - 1) * 2.0 * math.pi / span


def load_params(path: str) -> HamiltonianParams:
    """Read a flat key/value config file into HamiltonianParams.

    Lines look like "c_mev = -98.23"; '#' starts a comment; keys not present
    keep their defaults. Unknown keys are rejected so typos do not silently
    fall back.
    """
    values = {}
    with open(path, "r", encoding="utf-8") as handle:
        for lineno, raw in enumerate(handle, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{lineno}: expected 'key = value', got {raw!r}")
            key, _, text = line.partition("=")
            key = key.strip().lower()
            if key not in _CONFIG_KEYS:
                raise ValueError(
                    f"{path}:{lineno}: unknown key {key!r}, expected one of "
                    f"{sorted(_CONFIG_KEYS)}"
                )
            values[_CONFIG_KEYS[key]] = float(text.strip())
    return HamiltonianParams(**values)


def dump_params(params: HamiltonianParams, path: str) -> None:
    """Write params as a flat key/value config file that round-trips exactly.

    repr() of a Python float parses back to the identical bits, so a
    dump/load cycle reproduces the input field for field.
    """
    with open(path, "w", encoding="utf-8") as handle:
        handle.write("# pionless-qre parameter file (energies MeV, lengths fm)\n")
        for key, field in _CONFIG_KEYS.items():
            handle.write(f"{key} = {getattr(params, field)!r}\n")


def params_from_environment() -> HamiltonianParams:
    """Default params, overridden by the config file named in the
    PIONLESS_QRE_PARAMS environment variable when set."""
    path = os.environ.get(PARAMS_ENV_VAR)
    if path:
        return load_params(path)
    return HamiltonianParams()
