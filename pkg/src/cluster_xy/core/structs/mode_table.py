from collections.abc import Iterator
from dataclasses import dataclass

import numpy as np

from .coupling import CouplingPoint, FloatArray
from .flags import NO_FLAGS, Flag
from .grid import MomentumGrid

type BoolArray = np.ndarray[tuple[int, ...], np.dtype[np.bool]]


@dataclass(frozen=True, slots=True)
class ModeRow:
    """Single paired momentum of a ``ModeTable``."""

    k: float
    epsilon: float
    delta: float
    energy: float
    theta: float
    gapless: bool


@dataclass(frozen=True, slots=True, eq=False)
class ModeTable:
    """
    Closed-form single-mode quantities of one coupling point on one momentum grid.

    Paired momenta carry ``ε_k``, ``δ_k``, ``Δ_k`` and the Bogoliubov angle ``θ_k``;
    unpaired momenta (q = 1 only) carry ``ε_k`` alone, since ``δ_k`` vanishes there.

    :param grid: ``MomentumGrid`` the table was evaluated on.
    :param point: ``CouplingPoint`` the table was evaluated at.
    :param epsilon, delta, energy, theta: 1d arrays aligned with ``grid.paired_momenta``.
    :param gapless: mask of paired modes with ``Δ_k <= τ_gapless``, their ``theta`` is 0.
    :param unpaired_epsilon: ``ε_k`` at ``grid.unpaired_momenta``.
    :param flags: ``Flag.GAPLESS_MODE`` when any paired or unpaired mode is gapless.
    """

    grid: MomentumGrid
    point: CouplingPoint
    epsilon: FloatArray
    delta: FloatArray
    energy: FloatArray
    theta: FloatArray
    gapless: BoolArray
    unpaired_epsilon: FloatArray
    flags: Flag = NO_FLAGS

    @property
    def k(self) -> FloatArray:
        return self.grid.paired_momenta

    @property
    def unpaired_k(self) -> FloatArray:
        return self.grid.unpaired_momenta

    @property
    def min_energy(self) -> float:
        """Smallest ``Δ_k`` over paired and unpaired momenta of the grid."""
        candidates = np.concatenate((self.energy, np.abs(self.unpaired_epsilon)))
        return float(candidates.min())

    @property
    def max_energy(self) -> float:
        candidates = np.concatenate((self.energy, np.abs(self.unpaired_epsilon)))
        return float(candidates.max())

    def rows(self) -> Iterator[ModeRow]:
        for values in zip(self.k, self.epsilon, self.delta, self.energy, self.theta, self.gapless, strict=True):
            k, epsilon, delta, energy, theta, gapless = values
            yield ModeRow(float(k), float(epsilon), float(delta), float(energy), float(theta), bool(gapless))

    def __len__(self) -> int:
        return self.grid.size
