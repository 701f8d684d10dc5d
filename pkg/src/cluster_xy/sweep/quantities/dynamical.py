from core import CouplingPoint
from quench import EchoSeries, QuenchProtocol, default_time_grid, loschmidt_echo

from ..plan import ScanPlan
from ..quantity_abc import Evaluation, Quantity, register_quantity
from ..quantity_configs import EchoConfig, QuantityCode


def _echo(point: CouplingPoint, plan: ScanPlan) -> EchoSeries:
    """Echo of the quench from ``point`` to the configured final point."""
    config: EchoConfig = plan.config
    protocol = QuenchProtocol(point, config.final, plan.grid)
    return loschmidt_echo(protocol, default_time_grid(protocol, config.t_max, config.dt))


@register_quantity(QuantityCode.ECHO)
class EchoQuantity(Quantity):
    """Statistics of the Loschmidt echo over its statistics window."""

    columns = ("L_mean", "L_std", "L_min")

    def evaluate(self, point: CouplingPoint, plan: ScanPlan) -> Evaluation:
        series = _echo(point, plan)
        return (series.mean, series.std, float(series.values.min())), series.flags


@register_quantity(QuantityCode.REVIVALS)
class RevivalsQuantity(Quantity):
    columns = ("revivals", "t_first", "L_first", "width_first")

    def evaluate(self, point: CouplingPoint, plan: ScanPlan) -> Evaluation:
        series = _echo(point, plan)
        first = series.first_revival
        if first is None:
            return (0, None, None, None), series.flags
        return (len(series.revivals), first.time, first.value, first.width), series.flags


@register_quantity(QuantityCode.REVIVAL_TIME)
class RevivalTimeQuantity(Quantity):
    """First revival time, a map of the initial couplings for a fixed final point."""

    columns = ("t_first",)

    def evaluate(self, point: CouplingPoint, plan: ScanPlan) -> Evaluation:
        series = _echo(point, plan)
        first = series.first_revival
        return (first.time if first is not None else None,), series.flags
