# geometry/__init__.py

from .fidelity import (
    GroundStateOverlap,
    fidelity,
    ground_state_overlap,
    overlap_tables,
    pair_excitation_overlap,
    relative_angles,
    unpaired_factor,
)
from .overlap_scan import OverlapSample, OverlapScan, overlap_scan
from .tensor import QgtMatrix, fidelity_susceptibility, quantum_geometric_tensor, theta_gradient

__all__ = [
    "GroundStateOverlap",
    "OverlapSample",
    "OverlapScan",
    "QgtMatrix",
    "fidelity",
    "fidelity_susceptibility",
    "ground_state_overlap",
    "overlap_scan",
    "overlap_tables",
    "pair_excitation_overlap",
    "quantum_geometric_tensor",
    "relative_angles",
    "theta_gradient",
    "unpaired_factor",
]
