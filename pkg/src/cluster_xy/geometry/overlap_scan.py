import logging
from dataclasses import dataclass, field

import numpy as np

from core import NO_FLAGS, Axis, CouplingPoint, Flag, MomentumGrid, mapper_to_str
from spectrum import mode_table, surfaces_of

from .fidelity import overlap_tables

log = logging.getLogger(__name__)


@dataclass(frozen=True, slots=True)
class OverlapSample:
    point: CouplingPoint
    fidelity: float
    pair_weight: float
    flags: Flag = NO_FLAGS


@dataclass(frozen=True, slots=True)
class OverlapScan:
    """
    Overlaps of the ground state at ``center`` with the ground states of a square window around it.

    :param center: window center, the reference state ``|Ω(center)>``.
    :param plane: the two swept axes, first one is the outer (slow) index.
    :param samples: row-major over ``plane``.
    :param flags: ``Flag.CRITICAL_WINDOW`` when a window point is gapless or on a critical surface.
    """

    center: CouplingPoint
    plane: tuple[Axis, Axis]
    grid: MomentumGrid
    samples: tuple[OverlapSample, ...] = field(default=())
    flags: Flag = NO_FLAGS

    @property
    def schema(self) -> tuple[str, ...]:
        return (mapper_to_str(self.plane[0]), mapper_to_str(self.plane[1]), "F", "F1", "flags")

    def rows(self) -> list[tuple]:
        first, second = self.plane
        return [
            (
                float(sample.point.as_array()[first]),
                float(sample.point.as_array()[second]),
                sample.fidelity,
                sample.pair_weight,
                sample.flags.label,
            )
            for sample in self.samples
        ]


def _check_scan(plane: tuple[Axis, Axis], radius: float, steps: int) -> tuple[Axis, Axis]:
    msg: list[str] = []
    if len(plane) != 2 or plane[0] == plane[1]:
        msg.append(f"plane must name two different axes, given: {plane!r}")
    if not radius >= 0:
        msg.append(f"radius must be non-negative, given: {radius!r}")
    if isinstance(steps, bool) or not isinstance(steps, (int, np.integer)) or steps < 2:
        msg.append(f"steps must be an integer >= 2, given: {steps!r}")
    if msg:
        raise ValueError("\n" + "\n".join(msg))
    return Axis(plane[0]), Axis(plane[1])


def overlap_scan(
    center: CouplingPoint,
    plane: tuple[Axis, Axis],
    radius: float,
    steps: int,
    grid: MomentumGrid,
) -> OverlapScan:
    """
    Fidelity ``F`` and pair weight ``F₁`` of ``|Ω(center)>`` against every point of a ``steps × steps`` window.

    The window is the square of side ``2·radius`` centred on ``center`` in ``plane``; the third coupling stays
    fixed. Rows are row-major, the first axis of ``plane`` being the outer index.
    """
    first, second = _check_scan(plane, radius, steps)
    offsets = np.linspace(-radius, radius, steps)
    reference = mode_table(grid, center)

    # only an odd window has a sample on the center
    middle = steps // 2 if steps % 2 else None

    samples: list[OverlapSample] = []
    flags = NO_FLAGS
    for i, outer in enumerate(offsets):
        for j, inner in enumerate(offsets):
            if i == j == middle:
                point, table = center, reference
            else:
                point = center.shifted(first, float(outer)).shifted(second, float(inner))
                table = mode_table(grid, point)
            overlap = overlap_tables(reference, table)
            if Flag.GAPLESS_MODE in table.flags or surfaces_of(point):
                flags |= Flag.CRITICAL_WINDOW
            samples.append(OverlapSample(point, overlap.fidelity, overlap.pair_weight, overlap.flags))

    log.info(
        "Overlap scan finished",
        extra={"center": center, "plane": f"{mapper_to_str(first)},{mapper_to_str(second)}", "points": len(samples)},
    )
    return OverlapScan(center=center, plane=(first, second), grid=grid, samples=tuple(samples), flags=flags)
