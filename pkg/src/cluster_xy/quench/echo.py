import logging
import math
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from core import NUMERICS, Flag, FloatArray
from geometry import unpaired_factor
from spectrum import max_group_velocity

from .protocol import QuenchProtocol, quench_angles
from .revivals import EchoInputError, build_series, check_times
from .series import EchoSeries

log = logging.getLogger(__name__)

CHUNK_SAMPLES = 2048


def _echo_chunk(times: FloatArray, weight: FloatArray, energy: FloatArray) -> FloatArray:
    phase = np.sin(2 * np.outer(times, energy)) ** 2
    return np.prod(1.0 - weight[np.newaxis, :] * phase, axis=1)


def echo_values(protocol: QuenchProtocol, times: FloatArray, *, workers: int = 1) -> tuple[FloatArray, Flag]:
    """
    Raw samples ``L(t) = Π_k (1 - sin²χ_k sin²(2 t Δ_k(final)))`` over the paired momenta.

    Unpaired modes keep their occupation under the evolution and contribute a unit factor; a sign change of
    their ``ε`` between the endpoints is only reported with ``Flag.UNPAIRED_SIGN_CHANGE``.
    """
    initial, final = protocol.tables()
    chi, flags = quench_angles(protocol)
    _, unpaired_flags = unpaired_factor(initial, final)
    flags |= unpaired_flags

    weight = np.sin(chi) ** 2
    energy = final.energy
    chunks = [times[i : i + CHUNK_SAMPLES] for i in range(0, times.size, CHUNK_SAMPLES)]
    if workers > 1 and len(chunks) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(lambda chunk: _echo_chunk(chunk, weight, energy), chunks))
    else:
        parts = [_echo_chunk(chunk, weight, energy) for chunk in chunks]
    values = np.clip(np.concatenate(parts), 0.0, 1.0)
    return values, flags


def loschmidt_echo(
    protocol: QuenchProtocol,
    times,
    *,
    window: tuple[float, float] | None = None,
    workers: int = 1,
) -> EchoSeries:
    """
    Loschmidt echo ``L(t) = |<ψ0|e^{-iH(final)t}|ψ0>|²`` of the sector ground state ``|ψ0>`` of ``initial``.

    :param protocol: quench endpoints and momentum grid.
    :param times: strictly increasing, non-negative sample times.
    :param window: statistics window; by default from the burn-in time to the last sample.
    :param workers: threads evaluating chunks of time samples, results keep the order of ``times``.
    :return: series with statistics and revivals, ``L(0) = 1`` and ``L ≡ 1`` for a trivial protocol.
    :raises EchoInputError: on an invalid time grid or a statistics window with too few samples.
    """
    times = check_times(times)
    values, flags = echo_values(protocol, times, workers=workers)
    _, velocity = max_group_velocity(protocol.final)
    series = build_series(times, values, size=protocol.grid.N, max_velocity=velocity, flags=flags, window=window)
    log.info(
        "Loschmidt echo evaluated",
        extra={
            "protocol": protocol,
            "samples": len(series),
            "mean": series.mean,
            "revivals": len(series.revivals),
            "flags": series.flags.label,
        },
    )
    return series


def default_time_step(protocol: QuenchProtocol) -> float:
    """``π / (SAMPLES_PER_OSCILLATION · Δ_max)`` with ``Δ_max`` the largest final energy on the grid."""
    _, final = protocol.tables()
    energy_max = final.max_energy
    if energy_max <= NUMERICS.TAU_GAPLESS:
        return math.pi / NUMERICS.SAMPLES_PER_OSCILLATION
    return math.pi / (NUMERICS.SAMPLES_PER_OSCILLATION * energy_max)


def default_time_grid(protocol: QuenchProtocol, t_max: float, dt: float | None = None) -> FloatArray:
    """
    Uniform grid ``0, dt, 2dt, ...`` up to ``t_max`` inclusive.

    :raises EchoInputError: if ``t_max`` or ``dt`` is not positive.
    """
    step = default_time_step(protocol) if dt is None else dt
    if not (t_max > 0 and step > 0):
        msg = f"t_max and dt must be positive, given: t_max={t_max!r}, dt={step!r}"
        raise EchoInputError(msg)
    count = int(math.floor(t_max / step + 1e-9)) + 1
    return np.arange(count, dtype=np.float64) * step
