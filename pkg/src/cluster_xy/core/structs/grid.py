import logging
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .coupling import FloatArray, ParitySector

log = logging.getLogger(__name__)

type IntArray = np.ndarray[tuple[int, ...], np.dtype[np.int64]]


class SizeDomainError(ValueError):
    """Raised when a chain length is odd, too small, or outside the oracle range."""


def _frozen(array: np.ndarray) -> np.ndarray:
    array.flags.writeable = False
    return array


@dataclass(frozen=True, slots=True)
class MomentumGrid:
    """
    Momenta of one parity sector of a periodic chain of ``N`` sites.

    Every momentum is stored as the integer numerator ``n`` of ``k = π·n/N`` with ``n = 2m + 1 - q``,
    reduced to ``[0, π]``; the radians are evaluated once from those integers.

    :param N: chain length, even and >= 4.
    :param sector: parity sector fixing the quantisation.
    :param paired_numerators: numerators of the momenta in ``(0, π)``, strictly increasing.
    :param unpaired_numerators: numerators of the momenta in ``{0, π}`` (empty for q = 0).
    """

    N: int
    sector: ParitySector
    paired_numerators: IntArray
    unpaired_numerators: IntArray
    paired_momenta: FloatArray = field(init=False)
    unpaired_momenta: FloatArray = field(init=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "paired_momenta", _frozen(np.pi * self.paired_numerators / self.N))
        object.__setattr__(self, "unpaired_momenta", _frozen(np.pi * self.unpaired_numerators / self.N))

    @property
    def size(self) -> int:
        """Number of paired momenta."""
        return int(self.paired_numerators.shape[0])

    @property
    def label(self) -> str:
        return f"N={self.N}, q={self.sector.q}"

    def __hash__(self) -> int:
        return hash((self.N, int(self.sector)))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MomentumGrid):
            return NotImplemented
        return self.N == other.N and self.sector == other.sector

    def all_momenta(self) -> FloatArray:
        """
        Every momentum of the sector, paired ones together with their negatives, in ``(-π, π]``.
        """
        return np.concatenate((-self.paired_momenta[::-1], self.unpaired_momenta[:1], self.paired_momenta, self.unpaired_momenta[1:]))


def validate_chain_length(N: int, *, upper: int | None = None) -> int:
    msg: list[str] = []
    if isinstance(N, bool) or not isinstance(N, (int, np.integer)):
        msg.append(f"N must be an integer, given {type(N)}: {N!r}")
    else:
        if N % 2:
            msg.append(f"N must be even, given: {N}")
        if N < 4:
            msg.append(f"N must be at least 4, given: {N}")
        if upper is not None and N > upper:
            msg.append(f"N must be at most {upper}, given: {N}")
    if msg:
        msgs = "\n" + "\n".join(msg)
        log.error("Chain length rejected", extra={"reason": msg})
        raise SizeDomainError(msgs)
    return int(N)


@lru_cache(maxsize=64)
def momentum_grid(N: int, sector: ParitySector | int) -> MomentumGrid:
    """
    Builds the momentum grid of one parity sector.

    For q = 0 the grid holds the ``N/2`` momenta ``π(2m + 1)/N`` below π and no unpaired momenta;
    for q = 1 it holds the ``N/2 - 1`` momenta ``2πm/N`` inside ``(0, π)`` plus the unpaired ``{0, π}``.

    :param N: chain length, even, >= 4.
    :param sector: ``ParitySector`` or its integer label.
    :raises SizeDomainError: on odd or too small ``N``.
    :raises ValueError: on a sector label outside ``{0, 1}``.
    """
    N = validate_chain_length(N)
    sector = ParitySector(sector)

    numerators = 2 * np.arange(N, dtype=np.int64) + 1 - sector.q
    numerators = numerators[numerators <= N]
    paired = numerators[(numerators > 0) & (numerators < N)]
    unpaired = numerators[(numerators == 0) | (numerators == N)]

    grid = MomentumGrid(
        N=N,
        sector=sector,
        paired_numerators=_frozen(paired.copy()),
        unpaired_numerators=_frozen(unpaired.copy()),
    )
    log.debug("Built momentum grid", extra={"N": N, "q": sector.q, "paired": grid.size})
    return grid
