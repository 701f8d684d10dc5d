from dataclasses import dataclass
from enum import IntEnum
from pathlib import Path

__all__ = [
    "AXIS_DISPLAY_MAP",
    "DISPLAY_TO_AXIS",
    "NUMERICS",
    "PROJECT_ROOT",
    "Axis",
    "NumericsConfig",
    "mapper_to_axis",
    "mapper_to_str",
]


class Axis(IntEnum):
    """
    Coordinates of the coupling space, in chart order.

    .. note::
        The integer values double as indices into ``CouplingPoint.as_array()`` and into ``QgtMatrix.entries``.
    """

    LAMBDA_X = 0
    """Nearest-neighbour ``σx σx`` coupling."""
    LAMBDA_Y = 1
    """Nearest-neighbour ``σy σy`` coupling."""
    H = 2
    """Transverse field along ``σz``."""


AXIS_DISPLAY_MAP: dict[Axis, str] = {
    Axis.LAMBDA_X: "lx",
    Axis.LAMBDA_Y: "ly",
    Axis.H: "h",
}

DISPLAY_TO_AXIS: dict[str, Axis] = {v: k for k, v in AXIS_DISPLAY_MAP.items()}


mapper_to_str = AXIS_DISPLAY_MAP.__getitem__
mapper_to_axis = DISPLAY_TO_AXIS.__getitem__


@dataclass(frozen=True, slots=True)
class NumericsConfig:
    """
    Numerical constants shared by every module.

    .. Important:
        Not meant to be changed at runtime, tolerances of different modules are tuned against each other.

    Attributes:
        TAU_GAPLESS (float): A mode with ``Δ_k <= TAU_GAPLESS`` is treated as gapless.
            Default: 1e-12
        SURFACE_TOL (float): Tolerance for closed-form critical surface membership in ``classify``.
            Default: 1e-9
        GAP_TOL (float): ``classify`` calls a point gapless when its gap estimate is below this value.
            Default: 1e-6
        GAP_RESOLUTION (int): Dense sampling resolution used by ``classify``.
            Default: 4096
        MIN_RESOLUTION (int): Smallest resolution accepted by the extremum searches.
            Default: 64
        REFINE_XATOL (float): Absolute tolerance in ``k`` of the bounded golden-section refinement.
            Default: 1e-12
        V_LIEB_ROBINSON (float): Lieb-Robinson velocity estimate for the revival-time bound.
            Default: 6.15
        ORACLE_MIN_N, ORACLE_MAX_N (int): Chain lengths accepted by the dense oracle.
            Default: 4, 12
        DEGENERACY_TOL (float): Eigenvalue spacing under which the oracle reports a degeneracy.
            Default: 1e-10
        MIN_WINDOW_SAMPLES (int): Minimal number of samples inside an echo statistics window.
            Default: 100
        SAMPLES_PER_OSCILLATION (int): Default time step is ``π / (SAMPLES_PER_OSCILLATION · Δ_max)``.
            Default: 40
    """

    TAU_GAPLESS: float = 1e-12
    SURFACE_TOL: float = 1e-9
    GAP_TOL: float = 1e-6
    GAP_RESOLUTION: int = 4096
    MIN_RESOLUTION: int = 64
    REFINE_XATOL: float = 1e-12
    V_LIEB_ROBINSON: float = 6.15
    ORACLE_MIN_N: int = 4
    ORACLE_MAX_N: int = 12
    DEGENERACY_TOL: float = 1e-10
    MIN_WINDOW_SAMPLES: int = 100
    SAMPLES_PER_OSCILLATION: int = 40


NUMERICS = NumericsConfig()


VERSION = "0.1.0"

PROJECT_ROOT = Path(__file__).resolve().parents[3]
"""Main folder 'cluster-xy-chain' with src in it."""
