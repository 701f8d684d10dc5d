from core import NO_FLAGS, CouplingPoint
from quench import revival_time_bound
from spectrum import classify, gap_location, max_group_velocity

from ..plan import ScanPlan
from ..quantity_abc import Evaluation, Quantity, register_quantity
from ..quantity_configs import ClassifyConfig, GapConfig, QuantityCode

# Gapless points are results of these quantities and stay unflagged.


@register_quantity(QuantityCode.GAP)
class GapQuantity(Quantity):
    """``min_k Δ_k`` over ``[0, π]`` and the momentum where it is reached."""

    columns = ("gap", "k_min")

    def evaluate(self, point: CouplingPoint, plan: ScanPlan) -> Evaluation:
        config: GapConfig = plan.config
        k_min, value = gap_location(point, config.resolution)
        return (max(value, 0.0), k_min), NO_FLAGS


@register_quantity(QuantityCode.CLASSIFY)
class ClassifyQuantity(Quantity):
    columns = ("is_gapless", "gap", "surfaces")

    def evaluate(self, point: CouplingPoint, plan: ScanPlan) -> Evaluation:
        config: ClassifyConfig = plan.config
        report = classify(point, config.tol, config.gap_tol, config.resolution)
        return (bool(report.is_gapless), report.gap_estimate, report.label or None), NO_FLAGS


@register_quantity(QuantityCode.MAX_VELOCITY)
class MaxVelocityQuantity(Quantity):
    """Fastest quasiparticle and the light-cone revival estimate ``N / (2 v_max)``."""

    columns = ("k_star", "v_max", "revival_time_bound")

    def evaluate(self, point: CouplingPoint, plan: ScanPlan) -> Evaluation:
        config: GapConfig = plan.config
        k_star, velocity = max_group_velocity(point, config.resolution)
        bound = revival_time_bound(plan.N, velocity) if velocity > 0 else None
        return (k_star, velocity, bound), NO_FLAGS
