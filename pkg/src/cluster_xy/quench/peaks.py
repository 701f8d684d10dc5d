import logging

from .echo import default_time_grid, loschmidt_echo
from .protocol import QuenchProtocol
from .revivals import find_peaks
from .series import Revival

log = logging.getLogger(__name__)


def quasiparticle_peak_scan(protocol: QuenchProtocol, horizon: float, dt: float | None = None) -> list[Revival]:
    """
    Secondary echo peaks before the first revival, the signatures of single quasiparticles crossing the chain.

    A peak qualifies when ``mean + σ < L <= mean + 2σ``; peaks are coalesced like revivals.

    :param horizon: last sampled time; it should cover at least one revival, otherwise the whole horizon
        is scanned.
    """
    series = loschmidt_echo(protocol, default_time_grid(protocol, horizon, dt))
    first = series.first_revival
    end = first.time if first is not None else float(series.times[-1])
    if first is None:
        log.warning("No revival within horizon, scanning the whole series", extra={"protocol": protocol})

    peaks = find_peaks(
        series.times,
        series.values,
        lower=series.mean + series.std,
        upper=series.threshold,
        start=series.window[0],
        coalesce=series.coalesce,
        mean=series.mean,
    )
    return [peak for peak in peaks if peak.time < end]
