import logging
import math
from dataclasses import dataclass, replace
from enum import IntEnum
from typing import Self

import numpy as np

from ..base_setup import Axis, mapper_to_str

log = logging.getLogger(__name__)

type FloatArray = np.ndarray[tuple[int, ...], np.dtype[np.float64]]


@dataclass(frozen=True, slots=True)
class CouplingPoint:
    """
    Single point ``(λx, λy, h)`` of the coupling space, identifies one Cluster-XY Hamiltonian.

    Supports hashing and equality by value.

    Methods
    -------
        as_array
            Couplings in chart order ``(λx, λy, h)``.
        shifted
            New point moved along one axis.
        from_sequence
            Construction from any 3 numbers in chart order.

    :param lambda_x: ``σx σx`` coupling, finite.
    :type lambda_x: float
    :param lambda_y: ``σy σy`` coupling, finite.
    :type lambda_y: float
    :param h: transverse field, finite.
    :type h: float
    """

    lambda_x: float
    lambda_y: float
    h: float

    def __post_init__(self) -> None:
        msg: list[str] = []
        for name in ("lambda_x", "lambda_y", "h"):
            value = getattr(self, name)
            try:
                value = float(value)
            except (TypeError, ValueError):
                msg.append(f"{name} must be a real number, given {type(value)}: {value!r}")
                continue
            if not math.isfinite(value):
                msg.append(f"{name} must be finite, given: {value!r}")
            object.__setattr__(self, name, value)
        if msg:
            msgs = "\n" + "\n".join(msg)
            log.error("Creating CouplingPoint failed", extra={"reason": msg})
            raise ValueError(msgs)

    @classmethod
    def from_sequence(cls, values) -> Self:
        lambda_x, lambda_y, h = values
        return cls(lambda_x, lambda_y, h)

    def as_array(self) -> FloatArray:
        return np.array([self.lambda_x, self.lambda_y, self.h], dtype=np.float64)

    def shifted(self, axis: Axis, delta: float) -> Self:
        """
        :return: copy of the point with ``delta`` added to the coupling ``axis``.
        """
        coords = self.as_array()
        coords[axis] += delta
        return type(self).from_sequence(coords)

    def with_coupling(self, axis: Axis, value: float) -> Self:
        field = ("lambda_x", "lambda_y", "h")[axis]
        return replace(self, **{field: value})

    def __str__(self) -> str:
        return f"({mapper_to_str(Axis.LAMBDA_X)}={self.lambda_x:g}, {mapper_to_str(Axis.LAMBDA_Y)}={self.lambda_y:g}, h={self.h:g})"


class ParitySector(IntEnum):
    """
    Eigenspace of the parity ``Q = Π σz``, labelled by ``q`` with ``Q = (-1)^q``.

    The label fixes the momentum quantisation ``k = π(2m + 1 - q)/N``.
    """

    EVEN = 0
    ODD = 1

    @property
    def q(self) -> int:
        return int(self)

    @property
    def parity(self) -> int:
        """Eigenvalue ``Q = (-1)^q`` of the parity operator."""
        return -1 if self else 1
