# oracle/__init__.py

from .cross_check import TOLERANCES, CheckResult, CrossCheckReport, run_cross_check
from .dynamics import exact_loschmidt, exact_pair_overlap, exact_pair_overlap_flags
from .ground_state import (
    DegenerateStateWarning,
    SectorSpectrum,
    SectorState,
    energy_offset,
    energy_offset_flags,
    exact_overlap,
    exact_overlap_flags,
    fix_phase,
    sector_ground_state,
    sector_spectrum,
)
from .hamiltonian import (
    DenseHamiltonian,
    OracleError,
    build_hamiltonian,
    check_oracle_size,
    parity_diagonal,
    parity_operator,
    pauli_string,
    sector_indices,
)

__all__ = [
    "TOLERANCES",
    "CheckResult",
    "CrossCheckReport",
    "DegenerateStateWarning",
    "DenseHamiltonian",
    "OracleError",
    "SectorSpectrum",
    "SectorState",
    "build_hamiltonian",
    "check_oracle_size",
    "energy_offset",
    "energy_offset_flags",
    "exact_loschmidt",
    "exact_overlap",
    "exact_overlap_flags",
    "exact_pair_overlap",
    "exact_pair_overlap_flags",
    "fix_phase",
    "parity_diagonal",
    "parity_operator",
    "pauli_string",
    "run_cross_check",
    "sector_ground_state",
    "sector_indices",
    "sector_spectrum",
]
