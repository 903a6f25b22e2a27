"""Computational-basis bookkeeping for the desk-scale Hilbert space.

A single particle carries d lattice coordinates (m bits each), one spin bit,
and one isospin bit, for 4 M^d states. Multi-particle indices are packed
lexicographically: particle 0 is most significant, and within a particle the
coordinates (axis 0 first) precede spin, which precedes isospin.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..params import LatticeConfig, SystemSpec


def single_particle_dim(lattice: LatticeConfig) -> int:
    """Number of single-particle states, 4 M^d."""
    return 4 * lattice.M ** lattice.d


def spatial_dim(lattice: LatticeConfig) -> int:
    """Number of lattice sites M^d."""
    return lattice.M ** lattice.d


def total_dim(spec: SystemSpec) -> int:
    """Dimension of the eta-particle desk space, (4 M^d)^eta."""
    return single_particle_dim(spec.lattice) ** spec.eta


@dataclass(frozen=True)
class BasisIndex:
    """One labelled basis state: coords[p][a] is the axis-a coordinate of
    particle p, spins and isospins are 0/1 per particle."""

    coords: tuple
    spins: tuple
    isospins: tuple

    def __post_init__(self):
        eta = len(self.coords)
        if len(self.spins) != eta or len(self.isospins) != eta:
            raise ValueError("coords, spins, and isospins must have one entry per particle")
        for s in self.spins + self.isospins:
            if s not in (0, 1):
                raise ValueError(f"spin and isospin labels must be 0 or 1, got {s}")

    @property
    def eta(self) -> int:
        return len(self.coords)

    def pack(self, lattice: LatticeConfig) -> int:
        """Flatten to the lexicographic integer index."""
        M = lattice.M
        omega = single_particle_dim(lattice)
        index = 0
        for p in range(self.eta):
            if len(self.coords[p]) != lattice.d:
                raise ValueError("each particle needs d coordinates")
            sp = 0
            for x in self.coords[p]:
                if not 0 <= x < M:
                    raise ValueError(f"coordinate {x} outside [0, {M})")
                sp = sp * M + x
            sp = (sp * 2 + self.spins[p]) * 2 + self.isospins[p]
            index = index * omega + sp
        return index

    @classmethod
    def unpack(cls, index: int, lattice: LatticeConfig, eta: int) -> "BasisIndex":
        """Inverse of pack."""
        M = lattice.M
        omega = single_particle_dim(lattice)
        if not 0 <= index < omega ** eta:
            raise ValueError(f"index {index} outside the {eta}-particle space")
        coords, spins, isospins = [], [], []
        for _ in range(eta):
            sp = index % omega
            index //= omega
            isospins.append(sp % 2)
            sp //= 2
            spins.append(sp % 2)
            sp //= 2
            axes = []
            for _ in range(lattice.d):
                axes.append(sp % M)
                sp //= M
            coords.append(tuple(reversed(axes)))
        return cls(
            coords=tuple(reversed(coords)),
            spins=tuple(reversed(spins)),
            isospins=tuple(reversed(isospins)),
        )
