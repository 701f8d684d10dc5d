from dataclasses import dataclass, field

from core import NO_FLAGS, Flag, FloatArray


@dataclass(frozen=True, slots=True)
class Revival:
    """
    Single detected echo peak.

    :param time: time of the highest sample of the peak.
    :param value: echo value at ``time``.
    :param width: full width of the peak at half its height above the mean.
    """

    time: float
    value: float
    width: float = 0.0


@dataclass(frozen=True, slots=True, eq=False)
class EchoSeries:
    """
    Sampled Loschmidt echo with its statistics and detected revivals.

    :param times: increasing sample times, in units of inverse couplings.
    :param values: ``L(t)`` in ``[0, 1]``.
    :param mean, std: arithmetic mean and population standard deviation over ``window``.
    :param window: ``(t_start, t_end)`` of the statistics window.
    :param coalesce: width of the revival coalescing window.
    :param revivals: peaks above ``mean + 2·std``, one per coalescing window.
    :param flags: diagnostics of the underlying protocol.
    """

    times: FloatArray
    values: FloatArray
    mean: float
    std: float
    window: tuple[float, float]
    coalesce: float
    revivals: tuple[Revival, ...] = field(default=())
    flags: Flag = NO_FLAGS

    SCHEMA = ("t", "L", "is_revival")

    @property
    def threshold(self) -> float:
        return self.mean + 2 * self.std

    @property
    def first_revival(self) -> Revival | None:
        return self.revivals[0] if self.revivals else None

    def rows(self) -> list[tuple[float, float, bool]]:
        marked = {revival.time for revival in self.revivals}
        return [(float(t), float(value), float(t) in marked) for t, value in zip(self.times, self.values, strict=True)]

    def __len__(self) -> int:
        return int(self.times.shape[0])
