from dataclasses import dataclass
from enum import Enum
from typing import TypeVar


class QuantityCode(Enum):
    """
    Scan quantities, values are the names used by plans and the CLI:
        - gap
        - classify
        - fidelity_step
        - qgt
        - chi_f
        - overlap_f
        - overlap_f1
        - echo
        - revivals
        - max_velocity
        - revival_time
    """

    GAP = "gap"
    CLASSIFY = "classify"
    FIDELITY_STEP = "fidelity_step"
    QGT = "qgt"
    CHI_F = "chi_f"
    OVERLAP_F = "overlap_f"
    OVERLAP_F1 = "overlap_f1"
    ECHO = "echo"
    REVIVALS = "revivals"
    MAX_VELOCITY = "max_velocity"
    REVIVAL_TIME = "revival_time"


@dataclass
class BaseQuantityConfig:
    def as_dict(self) -> dict[str, object]:
        return {name: _plain(getattr(self, name)) for name in self.__dataclass_fields__}


def _plain(value: object) -> object:
    if isinstance(value, Enum):
        return value.name
    if isinstance(value, tuple):
        return [_plain(item) for item in value]
    if hasattr(value, "as_array"):
        return [float(item) for item in value.as_array()]
    return value


QuantityConfigType = TypeVar("QuantityConfigType", bound=BaseQuantityConfig)
