from abc import ABC, abstractmethod
from collections.abc import Callable
from typing import ClassVar, TypeVar

from core import CouplingPoint, Flag

from .plan import ScanPlan
from .quantity_configs import QuantityCode

# ==========================================================================================
# To add new scan quantity:
# 1) Implement class in src/cluster_xy/sweep/quantities + decorate with @register_quantity
# 2) Add config dataclass in src/cluster_xy/sweep/quantity_configs + update QuantityCode enum
#    and CONFIG_FOR_CODE
# 3) Update exports & imports:
#       src/cluster_xy/sweep/quantities/__init__.py (export new quantity class)
#       src/cluster_xy/sweep/__init__.py (export new config dataclass)
# ==========================================================================================


type Cell = float | int | bool | str | None
type Evaluation = tuple[tuple[Cell, ...], Flag]

existing_quantities: dict[QuantityCode, Callable] = {}


class Quantity(ABC):
    """
    One scan quantity: a pure function of a coupling point and the plan it belongs to.

    :cvar columns: names of the value columns, in the order returned by ``evaluate``.
    """

    columns: ClassVar[tuple[str, ...]] = ()

    def __call__(self, point: CouplingPoint, plan: ScanPlan) -> Evaluation:
        """
        Shortcut for ``quantity.evaluate()``
        """
        return self.evaluate(point, plan)

    @abstractmethod
    def evaluate(self, point: CouplingPoint, plan: ScanPlan) -> Evaluation:
        """
        :return: values aligned with ``columns`` and the diagnostics of this point.
        """
        ...


QuantityType = TypeVar("QuantityType", bound=Quantity)


def register_quantity(*codes: QuantityCode) -> Callable[[type[QuantityType]], type[QuantityType]]:
    def decorator(cls: type[QuantityType]) -> type[QuantityType]:
        for code in codes:
            existing_quantities[code] = cls
        return cls

    return decorator


def get_quantity(code: QuantityCode) -> Quantity:
    """
    :returns: instance of the quantity registered for ``code``.
    """
    cls = existing_quantities.get(code)
    if cls is None:
        msg = f"Unknown quantity: {code}, must be one of {list(existing_quantities.keys())}"
        raise ValueError(msg)
    return cls()
