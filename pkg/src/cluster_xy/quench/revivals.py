"""
Revival analysis of sampled Loschmidt echoes.

Provides:
- echo_statistics: mean and population standard deviation over a time window.
- burn_in_time: end of the initial collapse of the echo.
- detect_revivals: peaks above ``mean + 2σ``, coalesced over a window set by the fastest quasiparticle.
- revival_time_bound: ``N / (2 v)``.
- build_series: assemble an :class:`EchoSeries` from raw samples.
"""

import logging

import numpy as np

from core import NO_FLAGS, NUMERICS, Flag, FloatArray

from .series import EchoSeries, Revival

log = logging.getLogger(__name__)


class EchoInputError(ValueError):
    """Invalid echo time grid or statistics window."""


def check_times(times) -> FloatArray:
    array = np.asarray(times, dtype=np.float64)
    msg: list[str] = []
    if array.ndim != 1 or array.size == 0:
        msg.append(f"times must be a non-empty 1-d sequence, given shape: {array.shape}")
    elif not np.all(np.isfinite(array)):
        msg.append("times must be finite")
    elif np.any(array < 0):
        msg.append(f"times must be non-negative, smallest given: {array.min()!r}")
    elif np.any(np.diff(array) <= 0):
        msg.append("times must be strictly increasing")
    if msg:
        log.error("Invalid echo time grid", extra={"reasons": "; ".join(msg)})
        raise EchoInputError("\n" + "\n".join(msg))
    return array


def _window_mask(times: FloatArray, window: tuple[float, float]) -> np.ndarray:
    start, end = window
    return (times >= start) & (times <= end)


def window_statistics(times: FloatArray, values: FloatArray, window: tuple[float, float]) -> tuple[float, float]:
    """
    Mean and population standard deviation of ``values`` on ``window``.

    :raises EchoInputError: if fewer than ``MIN_WINDOW_SAMPLES`` samples fall into the window.
    """
    mask = _window_mask(times, window)
    count = int(mask.sum())
    if count < NUMERICS.MIN_WINDOW_SAMPLES:
        msg = (
            f"statistics window {window} holds {count} samples, "
            f"at least {NUMERICS.MIN_WINDOW_SAMPLES} are required"
        )
        raise EchoInputError(msg)
    selected = values[mask]
    return float(selected.mean()), float(selected.std())


def echo_statistics(series: EchoSeries, window: tuple[float, float] | None = None) -> tuple[float, float]:
    """``(mean, std)`` of ``series`` over ``window``, the series' own statistics window by default."""
    return window_statistics(series.times, series.values, window or series.window)


def coalescing_window(size: int, max_velocity: float) -> float:
    """Peaks closer than ``N / (20 v_max)`` belong to one revival; 0 disables coalescing."""
    return size / (20 * max_velocity) if max_velocity > 0 else 0.0


def _neighbourhood(times: FloatArray, index: int, width: float) -> slice:
    if width <= 0:
        return slice(max(index - 1, 0), min(index + 2, times.size))
    lo = int(np.searchsorted(times, times[index] - width, side="left"))
    hi = int(np.searchsorted(times, times[index] + width, side="right"))
    return slice(lo, hi)


def burn_in_time(times: FloatArray, values: FloatArray, coalesce: float) -> float:
    """First time at which the echo sits at the minimum of its surrounding coalescing window."""
    for index in range(1, times.size - 1):
        neighbourhood = _neighbourhood(times, index, coalesce)
        segment = values[neighbourhood]
        if values[index] <= segment.min() and values[index] < values[0]:
            return float(times[index])
    return float(times[0])


def _peak_width(times: FloatArray, values: FloatArray, index: int, mean: float) -> float:
    half = mean + (values[index] - mean) / 2
    left = index
    while left > 0 and values[left - 1] > half:
        left -= 1
    right = index
    while right < values.size - 1 and values[right + 1] > half:
        right += 1
    return float(times[right] - times[left])


def find_peaks(
    times: FloatArray,
    values: FloatArray,
    *,
    lower: float,
    upper: float = np.inf,
    start: float = 0.0,
    coalesce: float = 0.0,
    mean: float = 0.0,
) -> list[Revival]:
    """
    Local maxima with ``lower < value <= upper`` at ``t >= start``.

    A maximum is kept only if it is the first highest sample within ``±coalesce``; plateaus therefore report once.
    """
    peaks: list[Revival] = []
    for index in np.flatnonzero((values > lower) & (values <= upper) & (times >= start)):
        neighbourhood = _neighbourhood(times, int(index), coalesce)
        segment = values[neighbourhood]
        if neighbourhood.start + int(np.argmax(segment)) != index:
            continue
        peaks.append(Revival(float(times[index]), float(values[index]), _peak_width(times, values, int(index), mean)))
    return peaks


def detect_revivals(series: EchoSeries) -> list[Revival]:
    """
    Revivals of ``series``: samples inside the statistics window exceeding ``mean + 2σ`` that are the highest
    within one coalescing window. A constant series has ``σ = 0`` and no revivals.
    """
    return find_peaks(
        series.times,
        series.values,
        lower=series.threshold,
        start=series.window[0],
        coalesce=series.coalesce,
        mean=series.mean,
    )


def revival_time_bound(size: int, velocity: float = NUMERICS.V_LIEB_ROBINSON) -> float:
    """
    Light-cone estimate ``N / (2 v)`` of the first revival.

    :raises ValueError: if ``velocity <= 0``.
    """
    if not velocity > 0:
        msg = f"velocity must be positive, given: {velocity!r}"
        raise ValueError(msg)
    return size / (2 * velocity)


def build_series(
    times: FloatArray,
    values: FloatArray,
    *,
    size: int,
    max_velocity: float,
    flags: Flag = NO_FLAGS,
    window: tuple[float, float] | None = None,
) -> EchoSeries:
    """
    Attach statistics and revivals to raw echo samples.

    The default statistics window starts at the burn-in time and ends at the last sample. When it holds fewer
    than ``MIN_WINDOW_SAMPLES`` samples the whole series is used for the statistics and no revival is reported.

    :raises EchoInputError: if an explicit ``window`` holds too few samples.
    """
    coalesce = coalescing_window(size, max_velocity)
    if window is None:
        window = (burn_in_time(times, values, coalesce), float(times[-1]))
        if int(_window_mask(times, window).sum()) < NUMERICS.MIN_WINDOW_SAMPLES:
            log.debug("Echo series too short for revival statistics", extra={"samples": int(times.size)})
            series = EchoSeries(
                times=times,
                values=values,
                mean=float(values.mean()),
                std=float(values.std()),
                window=(float(times[0]), float(times[-1])),
                coalesce=coalesce,
                flags=flags,
            )
            return series
    mean, std = window_statistics(times, values, window)
    series = EchoSeries(times=times, values=values, mean=mean, std=std, window=window, coalesce=coalesce, flags=flags)
    revivals = tuple(detect_revivals(series))
    log.debug(
        "Echo statistics",
        extra={"mean": mean, "std": std, "window": window, "coalesce": coalesce, "revivals": len(revivals)},
    )
    return EchoSeries(
        times=times,
        values=values,
        mean=mean,
        std=std,
        window=window,
        coalesce=coalesce,
        revivals=revivals,
        flags=flags,
    )
