import logging
import math
from collections.abc import Callable

import numpy as np

from core import NUMERICS, CouplingPoint, FloatArray

from .dispersion import _group_velocity, quasiparticle_energy

log = logging.getLogger(__name__)

INV_PHI = (math.sqrt(5) - 1) / 2  # 1 / phi
INV_PHI_SQUARE = (3 - math.sqrt(5)) / 2  # 1 / phi^2

MAX_REFINED_BASINS = 8


def golden_section(func: Callable[[float], float], lo: float, hi: float, xtol: float) -> tuple[float, float]:
    """
    Golden-section search for a minimum of ``func`` on ``[lo, hi]``.

    ``func`` is assumed unimodal on the interval. The bracket shrinks by ``1/phi`` per evaluation until it is
    narrower than ``xtol``.

    :return: ``(x, func(x))`` for the best point evaluated, endpoints included.
    """
    lo, hi = min(lo, hi), max(lo, hi)
    best_x, best_f = min(((lo, func(lo)), (hi, func(hi))), key=lambda pair: pair[1])
    width = hi - lo
    if width <= xtol:
        return best_x, best_f

    steps = math.ceil(math.log(xtol / width) / math.log(INV_PHI))
    c = lo + INV_PHI_SQUARE * width
    d = lo + INV_PHI * width
    fc, fd = func(c), func(d)

    for _ in range(steps - 1):
        if fc < fd:
            hi, d, fd = d, c, fc
            width *= INV_PHI
            c = lo + INV_PHI_SQUARE * width
            fc = func(c)
        else:
            lo, c, fc = c, d, fd
            width *= INV_PHI
            d = lo + INV_PHI * width
            fd = func(d)

    for x, f in ((c, fc), (d, fd)):
        if f < best_f:
            best_x, best_f = x, f
    return best_x, best_f


def _check_resolution(resolution: int) -> int:
    if isinstance(resolution, bool) or not isinstance(resolution, (int, np.integer)) or resolution < NUMERICS.MIN_RESOLUTION:
        msg = f"resolution must be an integer >= {NUMERICS.MIN_RESOLUTION}, given: {resolution!r}"
        raise ValueError(msg)
    return int(resolution)


def _candidate_basins(values: FloatArray) -> list[int]:
    """
    Indices of sampled local minima that may hide the global minimum.

    A basin is kept when its sampled value is within one sample-to-sample variation of the lowest sample.
    """
    left = np.concatenate(([np.inf], values[:-1]))
    right = np.concatenate((values[1:], [np.inf]))
    minima = np.flatnonzero((values < left) & (values <= right))
    lowest = int(np.argmin(values))
    margin = float(np.max(np.abs(np.diff(values)))) if values.size > 1 else 0.0
    minima = minima[values[minima] <= values[lowest] + margin]
    ordered = minima[np.argsort(values[minima], kind="stable")][:MAX_REFINED_BASINS]
    return sorted({lowest, *map(int, ordered)})


def minimize_over_momenta(
    func: Callable[[FloatArray], FloatArray],
    resolution: int,
    lower: float = 0.0,
    upper: float = math.pi,
) -> tuple[float, float]:
    """
    Minimum of a vectorised momentum function over ``[lower, upper]``.

    Dense sampling at ``resolution`` points, then golden-section refinement inside the two neighbouring sample
    intervals of each candidate basin.

    :return: ``(k_min, func(k_min))``.
    """
    resolution = _check_resolution(resolution)
    k = np.linspace(lower, upper, resolution)
    values = np.asarray(func(k), dtype=np.float64)

    def scalar(x: float) -> float:
        return float(func(np.asarray(x)))

    best_k, best_value = float(k[np.argmin(values)]), float(values.min())
    for index in _candidate_basins(values):
        lo = k[max(index - 1, 0)]
        hi = k[min(index + 1, resolution - 1)]
        x, f = golden_section(scalar, float(lo), float(hi), NUMERICS.REFINE_XATOL)
        if f < best_value:
            best_k, best_value = x, f
    return best_k, best_value


def gap(point: CouplingPoint, resolution: int = NUMERICS.GAP_RESOLUTION) -> float:
    """
    Gap ``min_k Δ_k`` over the continuous range ``k ∈ [0, π]``.

    :param point: coupling point.
    :param resolution: dense sampling resolution, >= 64.
    :return: non-negative gap in units of ``Δ`` (the many-body excitation is ``2Δ``).
    """
    _, value = minimize_over_momenta(lambda k: quasiparticle_energy(k, point), resolution)
    log.debug("Gap computed", extra={"point": point, "gap": value})
    return max(value, 0.0)


def gap_location(point: CouplingPoint, resolution: int = NUMERICS.GAP_RESOLUTION) -> tuple[float, float]:
    """``(k_min, gap)``, same search as :func:`gap`."""
    return minimize_over_momenta(lambda k: quasiparticle_energy(k, point), resolution)


def max_group_velocity(point: CouplingPoint, resolution: int = NUMERICS.GAP_RESOLUTION) -> tuple[float, float]:
    """
    Largest quasiparticle speed ``max_k |2 ∂kΔ_k|`` over ``k ∈ (0, π)``, gapless momenta excluded.

    The supremum may sit next to a gapless momentum, e.g. ``k -> 0⁺`` at ``(0, 1, 0)``; the refinement then
    approaches it to the refinement tolerance.

    :return: ``(k_star, v_star)`` with ``v_star >= 0``.
    """

    def negative_speed(k: FloatArray) -> FloatArray:
        velocity, _ = _group_velocity(np.asarray(k, dtype=np.float64), point)
        return -np.abs(velocity)

    k_star, value = minimize_over_momenta(negative_speed, resolution)
    return k_star, -value
