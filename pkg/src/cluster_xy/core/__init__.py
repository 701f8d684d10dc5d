# core/__init__.py

from .base_setup import (
    AXIS_DISPLAY_MAP,
    DISPLAY_TO_AXIS,
    NUMERICS,
    PROJECT_ROOT,
    VERSION,
    Axis,
    NumericsConfig,
    mapper_to_axis,
    mapper_to_str,
)
from .logging_config import setup_logging
from .structs import (
    DEGENERATE_FAMILY,
    NO_FLAGS,
    BoolArray,
    CouplingPoint,
    Flag,
    FloatArray,
    GaplessModeWarning,
    IntArray,
    ModeRow,
    ModeTable,
    MomentumGrid,
    ParitySector,
    SizeDomainError,
    momentum_grid,
    validate_chain_length,
)

__all__ = [
    "AXIS_DISPLAY_MAP",
    "DEGENERATE_FAMILY",
    "DISPLAY_TO_AXIS",
    "NO_FLAGS",
    "NUMERICS",
    "PROJECT_ROOT",
    "VERSION",
    "Axis",
    "BoolArray",
    "CouplingPoint",
    "Flag",
    "FloatArray",
    "GaplessModeWarning",
    "IntArray",
    "ModeRow",
    "ModeTable",
    "MomentumGrid",
    "NumericsConfig",
    "ParitySector",
    "SizeDomainError",
    "mapper_to_axis",
    "mapper_to_str",
    "momentum_grid",
    "setup_logging",
    "validate_chain_length",
]
