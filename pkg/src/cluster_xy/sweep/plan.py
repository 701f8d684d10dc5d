import configparser
import logging
from dataclasses import dataclass, field
from itertools import product
from pathlib import Path

import numpy as np

from core import Axis, CouplingPoint, ParitySector, mapper_to_axis, mapper_to_str, momentum_grid, validate_chain_length

from .quantity_configs import CONFIG_FOR_CODE, BaseQuantityConfig, QuantityCode

log = logging.getLogger(__name__)

PLAN_SECTION = "plan"


class PlanError(ValueError):
    """Invalid scan plan or plan file."""


@dataclass(frozen=True, slots=True)
class AxisRange:
    """
    One swept coupling, ``steps`` evenly spaced values from ``start`` to ``stop`` inclusive.

    ``steps == 1`` samples ``start`` only.
    """

    axis: Axis
    start: float
    stop: float
    steps: int

    def __post_init__(self) -> None:
        msg: list[str] = []
        if isinstance(self.steps, bool) or not isinstance(self.steps, (int, np.integer)) or self.steps < 1:
            msg.append(f"steps must be an integer >= 1, given: {self.steps!r}")
        if not (np.isfinite(self.start) and np.isfinite(self.stop)):
            msg.append(f"range bounds must be finite, given: {self.start!r}, {self.stop!r}")
        elif self.start > self.stop:
            msg.append(f"range start must not exceed stop, given: {self.start!r} > {self.stop!r}")
        if msg:
            raise PlanError("\n" + "\n".join(msg))

    @classmethod
    def parse(cls, text: str) -> "AxisRange":
        """From ``"name:start:stop:steps"``, e.g. ``"ly:0:2:101"``."""
        parts = [part.strip() for part in text.split(":")]
        if len(parts) != 4:
            msg = f"axis range must look like 'name:start:stop:steps', given: {text!r}"
            raise PlanError(msg)
        name, start, stop, steps = parts
        try:
            return cls(mapper_to_axis(name.lower()), float(start), float(stop), int(steps))
        except (KeyError, ValueError) as error:
            msg = f"invalid axis range {text!r}: {error}"
            raise PlanError(msg) from error

    def values(self) -> np.ndarray:
        if self.steps == 1:
            return np.array([self.start])
        return np.linspace(self.start, self.stop, self.steps)

    def __str__(self) -> str:
        return f"{mapper_to_str(self.axis)}:{self.start:g}:{self.stop:g}:{self.steps}"


@dataclass(frozen=True, slots=True)
class ScanPlan:
    """
    Evaluation of one quantity on a 1-d or 2-d grid of coupling points.

    :param quantity: what is evaluated per point.
    :param axes: one or two swept couplings; the first one is the outer (slow) index of the row-major order.
    :param fixed: values of the couplings that are not swept, missing ones are 0.
    :param N: even chain length of the momentum grid.
    :param sector: parity sector of the momentum grid.
    :param config: quantity options, default options of the quantity when ``None``.
    """

    quantity: QuantityCode
    axes: tuple[AxisRange, ...]
    fixed: dict[Axis, float] = field(default_factory=dict)
    N: int = 500
    sector: ParitySector = ParitySector.EVEN
    config: BaseQuantityConfig | None = None

    def __post_init__(self) -> None:
        msg: list[str] = []
        try:
            object.__setattr__(self, "quantity", QuantityCode(self.quantity))
        except ValueError:
            msg.append(f"unknown quantity: {self.quantity!r}, must be one of {[code.value for code in QuantityCode]}")
        swept = [axis_range.axis for axis_range in self.axes]
        if not 1 <= len(swept) <= 2:
            msg.append(f"plan must sweep 1 or 2 axes, given: {len(swept)}")
        if len(set(swept)) != len(swept):
            msg.append(f"swept axes must be distinct, given: {[mapper_to_str(axis) for axis in swept]}")
        if overlap := set(swept) & set(self.fixed):
            msg.append(f"fixed couplings overlap swept axes: {sorted(mapper_to_str(axis) for axis in overlap)}")
        try:
            validate_chain_length(self.N)
        except ValueError as error:
            msg.append(str(error).strip())
        try:
            object.__setattr__(self, "sector", ParitySector(self.sector))
        except ValueError:
            msg.append(f"sector must be 0 or 1, given: {self.sector!r}")

        if not msg:
            expected = CONFIG_FOR_CODE[self.quantity]
            if self.config is None:
                object.__setattr__(self, "config", expected())
            elif not isinstance(self.config, expected):
                msg.append(f"{self.quantity.value} expects {expected.__name__}, given: {type(self.config).__name__}")
        if msg:
            msgs = "\n" + "\n".join(msg)
            log.error("Invalid scan plan", extra={"reason": msg})
            raise PlanError(msgs)

    @property
    def grid(self):
        return momentum_grid(self.N, self.sector)

    @property
    def shape(self) -> tuple[int, ...]:
        return tuple(axis_range.steps for axis_range in self.axes)

    def points(self) -> list[CouplingPoint]:
        """Every plan point in row-major order over ``axes``."""
        base = np.zeros(3)
        for axis, value in self.fixed.items():
            base[axis] = value
        points: list[CouplingPoint] = []
        for values in product(*(axis_range.values() for axis_range in self.axes)):
            coords = base.copy()
            for axis_range, value in zip(self.axes, values, strict=True):
                coords[axis_range.axis] = value
            points.append(CouplingPoint.from_sequence(coords))
        return points

    def midpoint(self) -> CouplingPoint:
        coords = np.zeros(3)
        for axis, value in self.fixed.items():
            coords[axis] = value
        for axis_range in self.axes:
            coords[axis_range.axis] = (axis_range.start + axis_range.stop) / 2
        return CouplingPoint.from_sequence(coords)

    def as_dict(self) -> dict[str, object]:
        """Plain representation echoed into dataset metadata."""
        return {
            "quantity": self.quantity.value,
            "axes": [str(axis_range) for axis_range in self.axes],
            "fixed": {mapper_to_str(axis): value for axis, value in sorted(self.fixed.items())},
            "N": self.N,
            "sector": self.sector.q,
            "config": self.config.as_dict() if self.config is not None else {},
        }


def read_plan_file(path: str | Path) -> dict[str, str]:
    """
    Reads a key-value plan file, ``key = value`` per line with ``#`` comments.

    Keys mirror the long CLI flags without dashes (``lx``, ``t_max``, ``axis``, ...); a ``[plan]`` header is optional.

    :raises PlanError: if the file cannot be read or parsed.
    """
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as error:
        msg = f"cannot read plan file {path}: {error}"
        raise PlanError(msg) from error
    if not text.lstrip().startswith("["):
        text = f"[{PLAN_SECTION}]\n{text}"

    parser = configparser.ConfigParser(comment_prefixes=("#",), inline_comment_prefixes=("#",))
    parser.optionxform = str  # keys are case sensitive, ``N`` is a flag
    try:
        parser.read_string(text, source=str(path))
    except configparser.Error as error:
        msg = f"invalid plan file {path}: {error}"
        raise PlanError(msg) from error
    if not parser.has_section(PLAN_SECTION):
        msg = f"plan file {path} has no [{PLAN_SECTION}] section"
        raise PlanError(msg)
    options = {key.replace("-", "_"): value for key, value in parser.items(PLAN_SECTION)}
    log.info("Plan file loaded", extra={"path": str(path), "keys": len(options)})
    return options
