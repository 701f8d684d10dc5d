import logging
import warnings
from dataclasses import dataclass

import numpy as np

from core import NO_FLAGS, NUMERICS, CouplingPoint, Flag, FloatArray, GaplessModeWarning, ModeTable, MomentumGrid
from spectrum import mode_table

log = logging.getLogger(__name__)


@dataclass(frozen=True, slots=True)
class GroundStateOverlap:
    """
    Overlaps between the BCS ground states of two coupling points on one grid.

    :param fidelity: ``F = |<Ω(p1)|Ω(p2)>|``.
    :param pair_weight: ``F₁``, total weight of ``|Ω(p2)>`` on the single-pair excitations ``γ†_k γ†_-k |Ω(p1)>``.
    :param flags: gapless, unpaired sign change and sector diagnostics of both tables.
    """

    fidelity: float
    pair_weight: float
    flags: Flag = NO_FLAGS

    @property
    def combined_weight(self) -> float:
        """``F² + F₁``, weight of ``|Ω(p2)>`` on the vacuum plus one-pair subspace of ``p1``."""
        return self.fidelity**2 + self.pair_weight


def relative_angles(first: ModeTable, second: ModeTable) -> tuple[FloatArray, Flag]:
    """
    ``χ_k = θ_k(first) - θ_k(second)`` over paired momenta.

    Modes gapless at either point are set to ``χ_k = 0`` and reported with ``Flag.GAPLESS_MODE``.
    """
    if first.grid != second.grid:
        msg = f"mode tables live on different grids: {first.grid.label} and {second.grid.label}"
        raise ValueError(msg)
    skipped = first.gapless | second.gapless
    chi = np.where(skipped, 0.0, first.theta - second.theta)
    flags = (first.flags | second.flags) & (Flag.GAPLESS_MODE | Flag.SECTOR_EXCITED)
    if skipped.any():
        flags |= Flag.GAPLESS_MODE
    return chi, flags


def unpaired_factor(first: ModeTable, second: ModeTable) -> tuple[float, Flag]:
    """
    Overlap of the unpaired-mode occupations (q = 1 only).

    The occupation of an unpaired mode follows ``sign(ε_k)``; different signs give exact orthogonality.
    A mode with ``|ε_k| <= τ_gapless`` at either point has no definite occupation and contributes 1.
    """
    factor, flags = 1.0, NO_FLAGS
    for eps_first, eps_second in zip(first.unpaired_epsilon, second.unpaired_epsilon, strict=True):
        if min(abs(eps_first), abs(eps_second)) <= NUMERICS.TAU_GAPLESS:
            flags |= Flag.GAPLESS_MODE
        elif np.sign(eps_first) != np.sign(eps_second):
            factor = 0.0
            flags |= Flag.UNPAIRED_SIGN_CHANGE
    return factor, flags


def overlap_tables(first: ModeTable, second: ModeTable) -> GroundStateOverlap:
    """
    Fidelity and pair weight from two mode tables of the same grid.

    Each ``(k, -k)`` pair contributes ``|cos(χ_k/2)|`` to the fidelity. The pair weight is
    ``Σ_k sin²(χ_k/2) Π_{k' != k} cos²(χ_k'/2)``, evaluated with prefix and suffix products in ascending ``k``.
    """
    chi, flags = relative_angles(first, second)
    factor, unpaired_flags = unpaired_factor(first, second)
    flags |= unpaired_flags

    cos_half = np.abs(np.cos(chi / 2))
    fidelity = factor * float(np.prod(cos_half))

    cos_sq = cos_half**2
    prefix = np.concatenate(([1.0], np.cumprod(cos_sq)[:-1]))
    suffix = np.concatenate((np.cumprod(cos_sq[::-1])[::-1][1:], [1.0]))
    pair_weight = factor**2 * float(np.sum(np.sin(chi / 2) ** 2 * prefix * suffix))

    return GroundStateOverlap(fidelity=min(fidelity, 1.0), pair_weight=pair_weight, flags=flags)


def fidelity(p1: CouplingPoint, p2: CouplingPoint, grid: MomentumGrid) -> float:
    """
    Ground-state fidelity ``F(p1, p2) = Π_k |cos((θ_k(p1) - θ_k(p2))/2)|`` times the unpaired-mode factor.

    Symmetric in its arguments, ``F(p, p) = 1``. Gapless modes are skipped and signalled by
    ``GaplessModeWarning``; the value is still returned.
    """
    result = overlap_tables(mode_table(grid, p1), mode_table(grid, p2))
    if Flag.GAPLESS_MODE in result.flags:
        warnings.warn(f"fidelity between {p1} and {p2} skips gapless modes", GaplessModeWarning, stacklevel=2)
    return result.fidelity


def pair_excitation_overlap(p_c: CouplingPoint, p_prime: CouplingPoint, grid: MomentumGrid) -> float:
    """
    ``F₁``: weight of ``|Ω(p_prime)>`` on the states with one excited Bogoliubov pair above ``|Ω(p_c)>``.

    ``F₁ = Σ_k sin²(χ_k/2) Π_{k' != k} cos²(χ_k'/2)`` with ``χ_k = θ_k(p_c) - θ_k(p_prime)``, in ``[0, 1 - F²]``.
    """
    result = overlap_tables(mode_table(grid, p_c), mode_table(grid, p_prime))
    if Flag.GAPLESS_MODE in result.flags:
        warnings.warn(f"pair overlap between {p_c} and {p_prime} skips gapless modes", GaplessModeWarning, stacklevel=2)
    return result.pair_weight


def ground_state_overlap(p1: CouplingPoint, p2: CouplingPoint, grid: MomentumGrid) -> GroundStateOverlap:
    """Flag-carrying variant of :func:`fidelity` and :func:`pair_excitation_overlap`."""
    return overlap_tables(mode_table(grid, p1), mode_table(grid, p2))
