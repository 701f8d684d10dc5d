import numpy as np

from core import CouplingPoint
from geometry import ground_state_overlap, quantum_geometric_tensor

from ..plan import ScanPlan
from ..quantity_abc import Evaluation, Quantity, register_quantity
from ..quantity_configs import FidelityStepConfig, OverlapConfig, QuantityCode, SusceptibilityConfig


@register_quantity(QuantityCode.FIDELITY_STEP)
class FidelityStepQuantity(Quantity):
    """``F(p, p + step · e_axis)``, the contour-plot fidelity."""

    columns = ("F",)

    def evaluate(self, point: CouplingPoint, plan: ScanPlan) -> Evaluation:
        config: FidelityStepConfig = plan.config
        overlap = ground_state_overlap(point, point.shifted(config.axis, config.step), plan.grid)
        return (overlap.fidelity,), overlap.flags


@register_quantity(QuantityCode.QGT)
class QgtQuantity(Quantity):
    """Upper triangle of the quantum geometric tensor."""

    columns = ("T_xx", "T_xy", "T_xh", "T_yy", "T_yh", "T_hh")

    def evaluate(self, point: CouplingPoint, plan: ScanPlan) -> Evaluation:
        tensor = quantum_geometric_tensor(point, plan.grid)
        rows, cols = np.triu_indices(3)
        return tuple(float(value) for value in tensor.entries[rows, cols]), tensor.flags


@register_quantity(QuantityCode.CHI_F)
class SusceptibilityQuantity(Quantity):
    columns = ("chi_F",)

    def evaluate(self, point: CouplingPoint, plan: ScanPlan) -> Evaluation:
        config: SusceptibilityConfig = plan.config
        tensor = quantum_geometric_tensor(point, plan.grid)
        return (tensor.susceptibility(config.direction, per_site=config.per_site),), tensor.flags


def _center(plan: ScanPlan) -> CouplingPoint:
    config: OverlapConfig = plan.config
    return config.center if config.center is not None else plan.midpoint()


@register_quantity(QuantityCode.OVERLAP_F)
class OverlapFidelityQuantity(Quantity):
    """``F(p_c, p)`` against the window center."""

    columns = ("F",)

    def evaluate(self, point: CouplingPoint, plan: ScanPlan) -> Evaluation:
        overlap = ground_state_overlap(_center(plan), point, plan.grid)
        return (overlap.fidelity,), overlap.flags


@register_quantity(QuantityCode.OVERLAP_F1)
class OverlapPairQuantity(Quantity):
    """``F₁(p_c, p)`` and the combined weight ``F² + F₁``."""

    columns = ("F1", "F2_plus_F1")

    def evaluate(self, point: CouplingPoint, plan: ScanPlan) -> Evaluation:
        overlap = ground_state_overlap(_center(plan), point, plan.grid)
        return (overlap.pair_weight, overlap.combined_weight), overlap.flags
