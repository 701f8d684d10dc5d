import logging
import os
import time
from concurrent.futures import ProcessPoolExecutor
from functools import partial

from core import NO_FLAGS, Axis, CouplingPoint, Flag, mapper_to_str

from . import quantities  # noqa: F401  (registers every quantity)
from .dataset import FLAGS_COLUMN, Dataset
from .plan import PlanError, ScanPlan
from .quantity_abc import Cell, get_quantity
from .tables import base_metadata

log = logging.getLogger(__name__)

WORKERS_ENV = "CLUSTER_XY_WORKERS"


def default_workers() -> int:
    """Worker count from ``CLUSTER_XY_WORKERS``, 1 when unset."""
    raw = os.getenv(WORKERS_ENV, "1")
    try:
        workers = int(raw)
    except ValueError as error:
        msg = f"{WORKERS_ENV} must be a positive integer, given: {raw!r}"
        raise PlanError(msg) from error
    if workers < 1:
        msg = f"{WORKERS_ENV} must be a positive integer, given: {raw!r}"
        raise PlanError(msg)
    return workers


def evaluate_point(plan: ScanPlan, point: CouplingPoint) -> tuple[tuple[Cell, ...], Flag]:
    """
    Values and flags of one plan point; an exception becomes an empty row with ``Flag.EVALUATION_ERROR``.
    """
    quantity = get_quantity(plan.quantity)
    try:
        values, flags = quantity(point, plan)
    except Exception:
        log.warning("Scan point failed", exc_info=True, extra={"point": point, "quantity": plan.quantity.value})
        return (None,) * len(quantity.columns), Flag.EVALUATION_ERROR
    return values, flags


def scan_schema(plan: ScanPlan) -> tuple[str, ...]:
    axes = tuple(mapper_to_str(axis) for axis in Axis)
    return (*axes, *get_quantity(plan.quantity).columns, FLAGS_COLUMN)


def scan_metadata(plan: ScanPlan, **extra: object) -> dict[str, object]:
    return base_metadata(plan=plan.as_dict(), **extra)


def run_scan(plan: ScanPlan, workers: int | None = None) -> Dataset:
    """
    Evaluates ``plan.quantity`` at every plan point.

    Rows follow the row-major plan order whatever the number of workers; every row holds all three couplings,
    the quantity columns and a ``flags`` column. Per-point failures are flagged rows, the scan never aborts.

    :param workers: processes evaluating points, ``CLUSTER_XY_WORKERS`` (default 1) when ``None``.
    """
    workers = default_workers() if workers is None else workers
    if workers < 1:
        msg = f"workers must be a positive integer, given: {workers!r}"
        raise PlanError(msg)

    points = plan.points()
    start = time.perf_counter()
    evaluate = partial(evaluate_point, plan)
    if workers > 1 and len(points) > 1:
        chunksize = max(1, len(points) // (4 * workers))
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(evaluate, points, chunksize=chunksize))
    else:
        results = [evaluate(point) for point in points]

    rows = []
    flagged = NO_FLAGS
    for point, (values, flags) in zip(points, results, strict=True):
        rows.append((*(float(value) for value in point.as_array()), *values, flags.label))
        flagged |= flags
    elapsed = time.perf_counter() - start
    log.info(
        "Scan finished",
        extra={"quantity": plan.quantity.value, "points": len(points), "workers": workers, "elapsed": elapsed},
    )
    return Dataset(schema=scan_schema(plan), rows=tuple(rows), metadata=scan_metadata(plan, flags=flagged.label))
