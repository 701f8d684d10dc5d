import logging
import warnings
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from core import (
    NO_FLAGS,
    NUMERICS,
    CouplingPoint,
    Flag,
    FloatArray,
    GaplessModeWarning,
    IntArray,
    ParitySector,
    momentum_grid,
)
from spectrum import mode_table, vacuum_energy

from .hamiltonian import DenseHamiltonian, OracleError, build_hamiltonian

log = logging.getLogger(__name__)

EIGEN_RESIDUAL_TOL = 1e-10


class DegenerateStateWarning(RuntimeWarning):
    """The sector ground state of the oracle is (near) degenerate, so overlaps depend on the chosen vector."""


@dataclass(frozen=True, slots=True, eq=False)
class SectorSpectrum:
    """
    Full eigensystem of a Hamiltonian restricted to one parity sector.

    :param energies: ascending sector eigenvalues.
    :param vectors: columns are eigenvectors in the sector basis ``indices``.
    :param indices: full-space basis indices spanning the sector.
    """

    hamiltonian: DenseHamiltonian
    sector: ParitySector
    energies: FloatArray
    vectors: np.ndarray
    indices: IntArray

    @property
    def is_degenerate(self) -> bool:
        return self.energies.size > 1 and self.energies[1] - self.energies[0] < NUMERICS.DEGENERACY_TOL

    def embed(self, vector: np.ndarray) -> np.ndarray:
        """Sector-basis vector as a full-space vector."""
        full = np.zeros(self.hamiltonian.dimension, dtype=np.complex128)
        full[self.indices] = vector
        return full


@dataclass(frozen=True, slots=True, eq=False)
class SectorState:
    """
    Lowest eigenpair of one parity sector.

    :param vector: normalised full-space state, its largest-magnitude amplitude is real and positive.
    :param flags: ``Flag.DEGENERATE`` when the two lowest sector eigenvalues are closer than ``DEGENERACY_TOL``.
    """

    energy: float
    vector: np.ndarray
    sector: ParitySector
    flags: Flag = NO_FLAGS


def fix_phase(vector: np.ndarray) -> np.ndarray:
    """Normalise and rotate the global phase so that the largest-magnitude amplitude is real positive."""
    vector = vector / np.linalg.norm(vector)
    pivot = vector[int(np.argmax(np.abs(vector)))]
    return vector * (abs(pivot) / pivot)


def sector_spectrum(hamiltonian: DenseHamiltonian, sector: ParitySector | int) -> SectorSpectrum:
    """
    Diagonalises the sector block of ``hamiltonian`` with ``scipy.linalg.eigh``.

    :raises OracleError: if an eigenvector residual ``‖Hv - Ev‖`` exceeds ``1e-10``.
    """
    sector = ParitySector(sector)
    block, indices = hamiltonian.sector_block(sector)
    energies, vectors = scipy.linalg.eigh(block)
    residual = float(np.abs(block @ vectors - vectors * energies[np.newaxis, :]).max())
    if residual > EIGEN_RESIDUAL_TOL:
        msg = f"eigenvector residual {residual:.3e} in sector q={sector.q} of {hamiltonian.point}"
        raise OracleError(msg)
    return SectorSpectrum(hamiltonian=hamiltonian, sector=sector, energies=energies, vectors=vectors, indices=indices)


def lowest_state(spectrum: SectorSpectrum) -> SectorState:
    flags = Flag.DEGENERATE if spectrum.is_degenerate else NO_FLAGS
    if flags:
        log.info(
            "Degenerate sector ground state",
            extra={"point": spectrum.hamiltonian.point, "sector": spectrum.sector.q, "N": spectrum.hamiltonian.N},
        )
    vector = fix_phase(spectrum.embed(spectrum.vectors[:, 0]))
    return SectorState(energy=float(spectrum.energies[0]), vector=vector, sector=spectrum.sector, flags=flags)


def sector_ground_state(hamiltonian: DenseHamiltonian, sector: ParitySector | int) -> SectorState:
    """
    Lowest eigenpair of ``hamiltonian`` inside the ``Q = (-1)^q`` eigenspace.

    The state is normalised with its largest-magnitude amplitude made real positive. Degeneracy is reported
    through ``Flag.DEGENERATE`` on the result.
    """
    return lowest_state(sector_spectrum(hamiltonian, sector))


def energy_offset_flags(size: int, sector: ParitySector | int, reference_point: CouplingPoint) -> tuple[float, Flag]:
    """Flag-carrying variant of :func:`energy_offset`."""
    sector = ParitySector(sector)
    table = mode_table(momentum_grid(size, sector), reference_point)
    state = sector_ground_state(build_hamiltonian(size, reference_point), sector)
    flags = (table.flags & (Flag.GAPLESS_MODE | Flag.SECTOR_EXCITED)) | state.flags
    return state.energy - vacuum_energy(table), flags


def energy_offset(size: int, sector: ParitySector | int, reference_point: CouplingPoint) -> float:
    """
    ``E_ED - E_vacuum`` at ``reference_point``: the constant relating the free-fermion sector vacuum energy
    ``-2 Σ Δ_k - Σ |ε_unpaired|`` to the oracle's sector ground energy.

    With the vacuum energy including every constant of the fermionic Hamiltonian the offset is zero;
    what the comparison checks is its independence of ``reference_point``.
    Gapless reference points are signalled by ``GaplessModeWarning``.
    """
    offset, flags = energy_offset_flags(size, sector, reference_point)
    if flags & (Flag.GAPLESS_MODE | Flag.SECTOR_EXCITED):
        msg = f"energy offset at {reference_point} is not reliable: {flags.label}"
        warnings.warn(msg, GaplessModeWarning, stacklevel=2)
    if Flag.DEGENERATE in flags:
        warnings.warn(f"degenerate sector ground state at {reference_point}", DegenerateStateWarning, stacklevel=2)
    return offset


def exact_overlap_flags(
    size: int,
    p1: CouplingPoint,
    p2: CouplingPoint,
    sector: ParitySector | int,
) -> tuple[float, Flag]:
    """Flag-carrying variant of :func:`exact_overlap`."""
    first = sector_ground_state(build_hamiltonian(size, p1), sector)
    second = first if p1 == p2 else sector_ground_state(build_hamiltonian(size, p2), sector)
    overlap = min(float(abs(np.vdot(first.vector, second.vector))), 1.0)
    return overlap, first.flags | second.flags


def exact_overlap(size: int, p1: CouplingPoint, p2: CouplingPoint, sector: ParitySector | int) -> float:
    """
    ``|<Ω(p1)|Ω(p2)>|`` between oracle sector ground states.

    A degenerate ground state at either point is signalled by ``DegenerateStateWarning``.
    """
    overlap, flags = exact_overlap_flags(size, p1, p2, sector)
    if flags:
        warnings.warn(f"degenerate sector ground state at {p1} or {p2}", DegenerateStateWarning, stacklevel=2)
    return overlap
