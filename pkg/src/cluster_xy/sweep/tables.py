import os
from datetime import UTC, datetime

from core import VERSION, ModeTable
from geometry import OverlapScan, QgtMatrix
from oracle import CheckResult, CrossCheckReport
from quench import EchoSeries, Revival

from .dataset import FLAGS_COLUMN, Dataset

TIMESTAMP_ENV = "SOURCE_DATE_EPOCH"


def dataset_timestamp() -> str:
    """UTC timestamp of a dataset, from ``SOURCE_DATE_EPOCH`` seconds when set, the current time otherwise."""
    raw = os.getenv(TIMESTAMP_ENV, "").strip()
    if not raw:
        return datetime.now(UTC).isoformat(timespec="seconds")
    try:
        moment = datetime.fromtimestamp(int(raw), UTC)
    except (ValueError, OverflowError, OSError) as error:
        msg = f"{TIMESTAMP_ENV} must be integer seconds since the epoch, given: {raw!r}"
        raise ValueError(msg) from error
    return moment.isoformat(timespec="seconds")


def base_metadata(**extra: object) -> dict[str, object]:
    return {"version": VERSION, "timestamp": dataset_timestamp(), **extra}


def point_dataset(columns: tuple[str, ...], point_values: tuple, values: tuple, flags_label: str, **extra) -> Dataset:
    """Single-row dataset ``(lx, ly, h, *columns, flags)``."""
    schema = ("lx", "ly", "h", *columns, FLAGS_COLUMN)
    return Dataset(schema, ((*point_values, *values, flags_label),), base_metadata(**extra))


def mode_table_dataset(table: ModeTable) -> Dataset:
    rows = [(row.k, row.epsilon, row.delta, row.energy, row.theta, row.gapless) for row in table.rows()]
    metadata = base_metadata(
        point=str(table.point),
        grid=table.grid.label,
        unpaired_k=[float(k) for k in table.unpaired_k],
        unpaired_epsilon=[float(eps) for eps in table.unpaired_epsilon],
        flags=table.flags.label,
    )
    return Dataset(("k", "epsilon", "delta", "energy", "theta", "gapless"), tuple(rows), metadata)


def qgt_dataset(tensor: QgtMatrix, **extra: object) -> Dataset:
    rows = [
        (name, *map(float, tensor.entries[index]), tensor.flags.label)
        for index, name in enumerate(("lx", "ly", "h"))
    ]
    metadata = base_metadata(point=str(tensor.point), grid=tensor.grid.label, **extra)
    return Dataset(("axis", "lx", "ly", "h", FLAGS_COLUMN), tuple(rows), metadata)


def overlap_scan_dataset(scan: OverlapScan) -> Dataset:
    metadata = base_metadata(center=str(scan.center), grid=scan.grid.label, flags=scan.flags.label)
    return Dataset(scan.schema, tuple(scan.rows()), metadata)


def series_dataset(series: EchoSeries, **extra: object) -> Dataset:
    """Echo samples with columns ``t, L, is_revival``."""
    metadata = base_metadata(
        mean=series.mean,
        std=series.std,
        window=list(series.window),
        coalesce=series.coalesce,
        revivals=len(series.revivals),
        flags=series.flags.label,
        **extra,
    )
    return Dataset(EchoSeries.SCHEMA, tuple(series.rows()), metadata)


def revivals_dataset(series: EchoSeries, peaks: list[Revival] | None = None, **extra: object) -> Dataset:
    """Detected revivals, followed by sub-threshold quasiparticle peaks when given."""
    rows = [("revival", revival.time, revival.value, revival.width) for revival in series.revivals]
    rows += [("peak", peak.time, peak.value, peak.width) for peak in peaks or []]
    metadata = base_metadata(
        mean=series.mean,
        std=series.std,
        threshold=series.threshold,
        flags=series.flags.label,
        **extra,
    )
    return Dataset(("kind", "t", "L", "width"), tuple(rows), metadata)


def cross_check_dataset(report: CrossCheckReport) -> Dataset:
    metadata = base_metadata(N=report.N, seed=report.seed, passed=report.passed)
    return Dataset(CheckResult.SCHEMA, tuple(result.row() for result in report.results), metadata)
