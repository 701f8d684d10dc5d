import logging
import time
import warnings
from itertools import combinations

import numpy as np

from core import NO_FLAGS, CouplingPoint, Flag, ParitySector, momentum_grid
from quench import EchoSeries, QuenchProtocol, build_series, check_times
from spectrum import max_group_velocity, mode_table

from .ground_state import DegenerateStateWarning, sector_ground_state, sector_spectrum
from .hamiltonian import build_hamiltonian

log = logging.getLogger(__name__)

PAIR_ENERGY_TOL = 1e-8


def exact_loschmidt(
    size: int,
    protocol: QuenchProtocol,
    times,
    *,
    window: tuple[float, float] | None = None,
) -> EchoSeries:
    """
    ``L(t) = |<ψ0|e^{-i H(final) t}|ψ0>|²`` by full diagonalisation of the final Hamiltonian.

    ``|ψ0>`` is the oracle sector ground state of ``H(initial)`` in the sector of ``protocol.grid``; it evolves
    inside that sector, so only the sector block of ``H(final)`` is diagonalised.

    :raises ValueError: if ``size`` differs from the protocol grid length.
    """
    if size != protocol.grid.N:
        msg = f"chain length {size} does not match the protocol grid {protocol.grid.label}"
        raise ValueError(msg)
    times = check_times(times)
    start = time.perf_counter()
    sector = protocol.grid.sector

    initial = sector_ground_state(build_hamiltonian(size, protocol.initial), sector)
    final = sector_spectrum(build_hamiltonian(size, protocol.final), sector)
    weights = np.abs(final.vectors.conj().T @ initial.vector[final.indices]) ** 2
    amplitude = np.exp(-1j * np.outer(times, final.energies)) @ weights
    values = np.clip(np.abs(amplitude) ** 2, 0.0, 1.0)

    flags = initial.flags | protocol.flags
    if Flag.DEGENERATE in flags:
        warnings.warn(f"degenerate initial state for {protocol}", DegenerateStateWarning, stacklevel=2)
    _, velocity = max_group_velocity(protocol.final)
    series = build_series(times, values, size=size, max_velocity=velocity, flags=flags, window=window)
    log.debug("Exact echo evaluated", extra={"protocol": protocol, "elapsed": time.perf_counter() - start})
    return series


def _pair_targets(energies: np.ndarray) -> tuple[list[float], Flag]:
    """Distinct single-pair excitation energies ``4Δ_k`` and whether they can be told apart."""
    flags = NO_FLAGS
    targets: list[float] = []
    for value in np.sort(4 * energies):
        if targets and value - targets[-1] < PAIR_ENERGY_TOL:
            flags |= Flag.UNRESOLVED_PAIRS
            continue
        targets.append(float(value))
    for first, second in combinations(range(energies.size), 2):
        two_pairs = 4 * (energies[first] + energies[second])
        if any(abs(two_pairs - target) < PAIR_ENERGY_TOL for target in targets):
            flags |= Flag.UNRESOLVED_PAIRS
    return targets, flags


def exact_pair_overlap_flags(
    size: int,
    p_c: CouplingPoint,
    p_prime: CouplingPoint,
    sector: ParitySector | int,
) -> tuple[float, Flag]:
    """Flag-carrying variant of :func:`exact_pair_overlap`."""
    sector = ParitySector(sector)
    table = mode_table(momentum_grid(size, sector), p_c)
    spectrum = sector_spectrum(build_hamiltonian(size, p_c), sector)
    target_state = sector_ground_state(build_hamiltonian(size, p_prime), sector)

    targets, flags = _pair_targets(table.energy)
    flags |= (Flag.DEGENERATE if spectrum.is_degenerate else NO_FLAGS) | target_state.flags
    amplitudes = spectrum.vectors.conj().T @ target_state.vector[spectrum.indices]
    excitation = spectrum.energies - spectrum.energies[0]

    weight = 0.0
    for target in targets:
        shell = np.abs(excitation - target) < PAIR_ENERGY_TOL
        if not shell.any():
            flags |= Flag.UNRESOLVED_PAIRS
            continue
        weight += float(np.sum(np.abs(amplitudes[shell]) ** 2))
    return weight, flags


def exact_pair_overlap(size: int, p_c: CouplingPoint, p_prime: CouplingPoint, sector: ParitySector | int) -> float:
    """
    Weight of ``|Ω(p_prime)>`` on the single-pair excitations of ``H(p_c)``.

    The excitations are the sector eigenstates at ``E0 + 4Δ_k(p_c)``, one Bogoliubov pair ``(k, -k)`` with two
    quasiparticles of energy ``2Δ_k`` each. Coinciding pair energies, or pair energies equal to a two-pair
    energy, are reported with ``Flag.UNRESOLVED_PAIRS`` and signalled by ``DegenerateStateWarning``.
    """
    weight, flags = exact_pair_overlap_flags(size, p_c, p_prime, sector)
    if flags:
        warnings.warn(f"pair overlap {p_c} / {p_prime}: {flags.label}", DegenerateStateWarning, stacklevel=2)
    return weight
