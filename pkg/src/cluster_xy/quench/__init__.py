# quench/__init__.py

from .echo import default_time_grid, default_time_step, echo_values, loschmidt_echo
from .peaks import quasiparticle_peak_scan
from .protocol import QuenchProtocol, chi_angles, quench_angles
from .revivals import (
    EchoInputError,
    build_series,
    burn_in_time,
    check_times,
    coalescing_window,
    detect_revivals,
    echo_statistics,
    find_peaks,
    revival_time_bound,
    window_statistics,
)
from .series import EchoSeries, Revival

__all__ = [
    "EchoInputError",
    "EchoSeries",
    "QuenchProtocol",
    "Revival",
    "build_series",
    "burn_in_time",
    "check_times",
    "chi_angles",
    "coalescing_window",
    "default_time_grid",
    "default_time_step",
    "detect_revivals",
    "echo_statistics",
    "echo_values",
    "find_peaks",
    "loschmidt_echo",
    "quasiparticle_peak_scan",
    "quench_angles",
    "revival_time_bound",
    "window_statistics",
]
