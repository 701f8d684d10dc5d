# core/structs/__init__.py

from .coupling import CouplingPoint, FloatArray, ParitySector
from .flags import DEGENERATE_FAMILY, NO_FLAGS, Flag, GaplessModeWarning
from .grid import IntArray, MomentumGrid, SizeDomainError, momentum_grid, validate_chain_length
from .mode_table import BoolArray, ModeRow, ModeTable

__all__ = [
    "DEGENERATE_FAMILY",
    "NO_FLAGS",
    "BoolArray",
    "CouplingPoint",
    "Flag",
    "FloatArray",
    "GaplessModeWarning",
    "IntArray",
    "ModeRow",
    "ModeTable",
    "MomentumGrid",
    "ParitySector",
    "SizeDomainError",
    "momentum_grid",
    "validate_chain_length",
]
