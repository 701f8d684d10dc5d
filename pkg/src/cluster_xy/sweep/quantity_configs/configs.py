import math
from collections.abc import Callable
from dataclasses import dataclass

import numpy as np

from core import NUMERICS, Axis, CouplingPoint, mapper_to_axis

from .base_config import BaseQuantityConfig


def _coerce[T](value: object, default: T, cast: Callable[[object], T], name: str, msg: list[str]) -> T:
    """``default`` for ``None``, otherwise ``cast(value)``; cast failures are appended to ``msg``."""
    if value is None:
        return default
    try:
        return cast(value)
    except (TypeError, ValueError, KeyError):
        msg.append(f"{name} cannot be converted, given {type(value)}: {value!r}")
        return default


def _axis(value: object) -> Axis:
    if isinstance(value, str):
        return mapper_to_axis(value.strip().lower())
    return Axis(value)


def _point(value: object) -> CouplingPoint:
    if isinstance(value, CouplingPoint):
        return value
    return CouplingPoint.from_sequence(value)


def _raise(msg: list[str]) -> None:
    if msg:
        msgs = "\n" + "\n".join(msg)
        raise ValueError(msgs)


@dataclass
class GapConfig(BaseQuantityConfig):
    """
    Configs for the ``gap`` and ``max_velocity`` quantities.

    :param resolution: dense sampling resolution of the momentum search, >= 64.
        Default: ``4096``
    """

    resolution: int | None = None

    def __post_init__(self):
        msg: list[str] = []
        self.resolution = _coerce(self.resolution, NUMERICS.GAP_RESOLUTION, int, "resolution", msg)
        if self.resolution < NUMERICS.MIN_RESOLUTION:
            msg.append(f"resolution must be at least {NUMERICS.MIN_RESOLUTION}, given: {self.resolution!r}")
        _raise(msg)


@dataclass
class ClassifyConfig(BaseQuantityConfig):
    """
    Configs for the ``classify`` quantity.

    :param tol: closed-form surface membership tolerance, positive.
        Default: ``1e-9``
    :param gap_tol: numerical gap below which a point is gapless, positive.
        Default: ``1e-6``
    :param resolution: dense sampling resolution, >= 64.
        Default: ``4096``
    """

    tol: float | None = None
    gap_tol: float | None = None
    resolution: int | None = None

    def __post_init__(self):
        msg: list[str] = []
        self.tol = _coerce(self.tol, NUMERICS.SURFACE_TOL, float, "tol", msg)
        self.gap_tol = _coerce(self.gap_tol, NUMERICS.GAP_TOL, float, "gap_tol", msg)
        self.resolution = _coerce(self.resolution, NUMERICS.GAP_RESOLUTION, int, "resolution", msg)
        if not self.tol > 0:
            msg.append(f"tol must be positive, given: {self.tol!r}")
        if not self.gap_tol > 0:
            msg.append(f"gap_tol must be positive, given: {self.gap_tol!r}")
        if self.resolution < NUMERICS.MIN_RESOLUTION:
            msg.append(f"resolution must be at least {NUMERICS.MIN_RESOLUTION}, given: {self.resolution!r}")
        _raise(msg)


@dataclass
class FidelityStepConfig(BaseQuantityConfig):
    """
    Configs for the ``fidelity_step`` quantity ``F(p, p + step · e_axis)``.

    :param step: coupling increment, finite and non-zero.
        Default: ``0.05``
    :param axis: coupling axis of the increment, ``Axis`` or its display name.
        Default: ``Axis.LAMBDA_Y``
    """

    step: float | None = None
    axis: Axis | str | None = None

    def __post_init__(self):
        msg: list[str] = []
        self.step = _coerce(self.step, 0.05, float, "step", msg)
        self.axis = _coerce(self.axis, Axis.LAMBDA_Y, _axis, "axis", msg)
        if not math.isfinite(self.step) or self.step == 0:
            msg.append(f"step must be finite and non-zero, given: {self.step!r}")
        _raise(msg)


@dataclass
class SusceptibilityConfig(BaseQuantityConfig):
    """
    Configs for the ``chi_f`` quantity.

    :param direction: unit 3-vector in the chart ``(λx, λy, h)``.
        Default: ``(0, 1, 0)``
    :param per_site: divide the susceptibility by ``N``.
        Default: ``False``
    """

    direction: tuple[float, float, float] | None = None
    per_site: bool | None = None

    def __post_init__(self):
        msg: list[str] = []
        self.direction = _coerce(self.direction, (0.0, 1.0, 0.0), lambda v: tuple(map(float, v)), "direction", msg)
        self.per_site = _coerce(self.per_site, False, bool, "per_site", msg)
        if len(self.direction) != 3 or not np.isclose(np.linalg.norm(self.direction), 1.0, rtol=0, atol=1e-9):
            msg.append(f"direction must be a unit 3-vector, given: {self.direction!r}")
        _raise(msg)


@dataclass
class OverlapConfig(BaseQuantityConfig):
    """
    Configs for the ``overlap_f`` and ``overlap_f1`` quantities.

    :param center: reference point ``p_c`` of ``F(p_c, p)`` and ``F₁(p_c, p)``.
        Default: ``None``, the midpoint of the scanned window.
    """

    center: CouplingPoint | None = None

    def __post_init__(self):
        msg: list[str] = []
        self.center = _coerce(self.center, None, _point, "center", msg)
        _raise(msg)


@dataclass
class EchoConfig(BaseQuantityConfig):
    """
    Configs for the ``echo``, ``revivals`` and ``revival_time`` quantities; every scanned point is the initial
    point of a quench to ``final``.

    :param final: couplings after the quench.
        Default: ``(0, 1, 0)``
    :param t_max: last sampled time, positive.
        Default: ``100.0``
    :param dt: time step, positive.
        Default: ``None``, ``π / (40 · Δ_max)`` of the final point.
    """

    final: CouplingPoint | None = None
    t_max: float | None = None
    dt: float | None = None

    def __post_init__(self):
        msg: list[str] = []
        self.final = _coerce(self.final, CouplingPoint(0.0, 1.0, 0.0), _point, "final", msg)
        self.t_max = _coerce(self.t_max, 100.0, float, "t_max", msg)
        self.dt = _coerce(self.dt, None, float, "dt", msg)
        if not self.t_max > 0:
            msg.append(f"t_max must be positive, given: {self.t_max!r}")
        if self.dt is not None and not self.dt > 0:
            msg.append(f"dt must be positive, given: {self.dt!r}")
        _raise(msg)
