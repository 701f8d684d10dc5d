# sweep/quantity_configs/__init__.py

from .base_config import BaseQuantityConfig, QuantityCode, QuantityConfigType
from .configs import (
    ClassifyConfig,
    EchoConfig,
    FidelityStepConfig,
    GapConfig,
    OverlapConfig,
    SusceptibilityConfig,
)

CONFIG_FOR_CODE: dict[QuantityCode, type[BaseQuantityConfig]] = {
    QuantityCode.GAP: GapConfig,
    QuantityCode.CLASSIFY: ClassifyConfig,
    QuantityCode.FIDELITY_STEP: FidelityStepConfig,
    QuantityCode.QGT: BaseQuantityConfig,
    QuantityCode.CHI_F: SusceptibilityConfig,
    QuantityCode.OVERLAP_F: OverlapConfig,
    QuantityCode.OVERLAP_F1: OverlapConfig,
    QuantityCode.ECHO: EchoConfig,
    QuantityCode.REVIVALS: EchoConfig,
    QuantityCode.MAX_VELOCITY: GapConfig,
    QuantityCode.REVIVAL_TIME: EchoConfig,
}
"""Config dataclass expected by each quantity."""

__all__ = [
    "CONFIG_FOR_CODE",
    "BaseQuantityConfig",
    "ClassifyConfig",
    "EchoConfig",
    "FidelityStepConfig",
    "GapConfig",
    "OverlapConfig",
    "QuantityCode",
    "QuantityConfigType",
    "SusceptibilityConfig",
]
