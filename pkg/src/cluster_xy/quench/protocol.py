import logging
import warnings
from dataclasses import dataclass

from core import NO_FLAGS, CouplingPoint, Flag, FloatArray, GaplessModeWarning, ModeTable, MomentumGrid
from geometry import relative_angles
from spectrum import mode_table, symmetry_partner

log = logging.getLogger(__name__)


@dataclass(frozen=True, slots=True)
class QuenchProtocol:
    """
    Sudden switch of the couplings ``initial -> final`` applied to the sector ground state of ``initial``.

    :param initial: couplings before the quench, whose ground state is the initial state.
    :param final: couplings generating the evolution.
    :param grid: momentum grid, its sector label selects the parity sector of the initial state.
    """

    initial: CouplingPoint
    final: CouplingPoint
    grid: MomentumGrid

    @property
    def is_trivial(self) -> bool:
        return self.initial == self.final

    @property
    def flags(self) -> Flag:
        return Flag.TRIVIAL_PROTOCOL if self.is_trivial else NO_FLAGS

    def tables(self) -> tuple[ModeTable, ModeTable]:
        """``(initial, final)`` mode tables on the protocol grid."""
        return mode_table(self.grid, self.initial), mode_table(self.grid, self.final)

    def partner(self) -> "QuenchProtocol":
        """Protocol between the ``Z2 × Z2`` images of both endpoints."""
        return QuenchProtocol(symmetry_partner(self.initial), symmetry_partner(self.final), self.grid)

    def __str__(self) -> str:
        return f"{self.initial} -> {self.final} [{self.grid.label}]"


def quench_angles(protocol: QuenchProtocol) -> tuple[FloatArray, Flag]:
    """Flag-carrying variant of :func:`chi_angles`."""
    initial, final = protocol.tables()
    chi, flags = relative_angles(initial, final)
    return chi, flags | protocol.flags


def chi_angles(protocol: QuenchProtocol) -> FloatArray:
    """
    ``χ_k = θ_k(initial) - θ_k(final)`` for every paired momentum, the angle between the initial pair state and
    the quasiparticle vacuum of the final Hamiltonian.

    Gapless modes are given ``χ_k = 0`` and signalled by ``GaplessModeWarning``.
    """
    chi, flags = quench_angles(protocol)
    if Flag.GAPLESS_MODE in flags:
        warnings.warn(f"quench {protocol} has gapless modes", GaplessModeWarning, stacklevel=2)
    return chi
