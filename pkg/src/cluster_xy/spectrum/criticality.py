import logging
from dataclasses import dataclass
from enum import Enum

import numpy as np

from core import NUMERICS, CouplingPoint

from .dispersion import sector_vacuum_is_ground
from .extremum import gap

log = logging.getLogger(__name__)


class Surface(Enum):
    """
    Closed-form gapless surfaces of the phase diagram.

    Planes close the gap at ``k = 0`` (minus) and ``k = π`` (plus); the parabola closes it at
    ``cos k = (λx - λy)/2``; the multicritical line is where the parabola ends on the planes.
    """

    PLANE_MINUS = "PlaneMinus"
    PLANE_PLUS = "PlanePlus"
    PARABOLA = "Parabola"
    MULTICRITICAL_LINE = "MulticriticalLine"


@dataclass(frozen=True, slots=True)
class CriticalityReport:
    """
    Outcome of :func:`classify`.

    :param point: classified coupling point.
    :param surfaces: closed-form surfaces the point lies on, in ``Surface`` declaration order.
    :param gap_estimate: numerical gap ``min_k Δ_k``.
    :param is_gapless: ``gap_estimate <= gap_tol``.
    """

    point: CouplingPoint
    surfaces: tuple[Surface, ...]
    gap_estimate: float
    is_gapless: bool

    @property
    def label(self) -> str:
        return "|".join(surface.value for surface in self.surfaces)


def plane_minus_residual(point: CouplingPoint) -> float:
    """``h - (-(λx + λy) + 1)``, equals ``-ε_0``."""
    return point.h + (point.lambda_x + point.lambda_y) - 1


def plane_plus_residual(point: CouplingPoint) -> float:
    """``h - ((λx + λy) + 1)``, equals ``-ε_π``."""
    return point.h - (point.lambda_x + point.lambda_y) - 1


def parabola_residual(point: CouplingPoint) -> float:
    return point.h - (point.lambda_y**2 - point.lambda_x * point.lambda_y - 1)


def multicritical_residual(point: CouplingPoint) -> float:
    """
    Distance (max norm in ``(λx, λy)``) to the line ``(±(h - 3)/2, ±(h + 1)/2, h)``, both signs tied.
    """
    h = point.h
    return min(
        max(abs(point.lambda_x - sign * (h - 3) / 2), abs(point.lambda_y - sign * (h + 1) / 2))
        for sign in (1, -1)
    )


def surfaces_of(point: CouplingPoint, tol: float = NUMERICS.SURFACE_TOL) -> tuple[Surface, ...]:
    """
    Closed-form surface membership within ``tol``.

    The parabola only counts for ``-2 <= λx - λy <= 2`` (inclusive, same ``tol``). The multicritical line uses
    ``tol/2`` per coordinate, so a member is always within ``tol`` of one of the planes.
    """
    found: list[Surface] = []
    if abs(plane_minus_residual(point)) <= tol:
        found.append(Surface.PLANE_MINUS)
    if abs(plane_plus_residual(point)) <= tol:
        found.append(Surface.PLANE_PLUS)
    if abs(parabola_residual(point)) <= tol and abs(point.lambda_x - point.lambda_y) <= 2 + tol:
        found.append(Surface.PARABOLA)
    if multicritical_residual(point) <= tol / 2:
        found.append(Surface.MULTICRITICAL_LINE)
    return tuple(found)


def classify(
    point: CouplingPoint,
    tol: float = NUMERICS.SURFACE_TOL,
    gap_tol: float = NUMERICS.GAP_TOL,
    resolution: int = NUMERICS.GAP_RESOLUTION,
) -> CriticalityReport:
    """
    Classifies a coupling point against the analytic critical surfaces.

    :param point: coupling point.
    :param tol: surface membership tolerance, > 0.
    :param gap_tol: gap under which the point is reported gapless.
    :param resolution: sampling resolution of the gap search.
    :raises ValueError: if ``tol`` or ``gap_tol`` is not positive.
    """
    msg: list[str] = []
    if not tol > 0:
        msg.append(f"tol must be positive, given: {tol!r}")
    if not gap_tol > 0:
        msg.append(f"gap_tol must be positive, given: {gap_tol!r}")
    if msg:
        raise ValueError("\n" + "\n".join(msg))

    estimate = gap(point, resolution)
    report = CriticalityReport(
        point=point,
        surfaces=surfaces_of(point, tol),
        gap_estimate=estimate,
        is_gapless=estimate <= gap_tol,
    )
    if bool(report.surfaces) != report.is_gapless:
        log.warning(
            "Closed-form surfaces and numerical gap disagree",
            extra={"point": point, "surfaces": report.label, "gap": estimate},
        )
    return report


def surface_distance(point: CouplingPoint) -> float:
    """
    Smallest residual of the three surface equations, a cheap proxy of the distance to criticality.

    The parabola residual is ignored outside its ``|λx - λy| <= 2`` range.
    """
    residuals = [abs(plane_minus_residual(point)), abs(plane_plus_residual(point))]
    if abs(point.lambda_x - point.lambda_y) <= 2:
        residuals.append(abs(parabola_residual(point)))
    return min(residuals)


def sample_noncritical_points(
    rng: np.random.Generator,
    count: int,
    *,
    box: float = 2.0,
    min_gap: float = 0.2,
    resolution: int = 512,
    odd_sector_vacuum: bool = False,
) -> list[CouplingPoint]:
    """
    Draws coupling points uniformly from ``[-box, box]³`` whose gap is at least ``min_gap``.

    :param odd_sector_vacuum: also require the sector q = 1 vacuum to be the sector ground state
        (``ε_0 ε_π < 0``), for comparisons in the odd sector.
    """
    points: list[CouplingPoint] = []
    while len(points) < count:
        candidate = CouplingPoint.from_sequence(rng.uniform(-box, box, size=3))
        if odd_sector_vacuum and not sector_vacuum_is_ground(candidate, 1):
            continue
        if gap(candidate, resolution) >= min_gap:
            points.append(candidate)
    return points
