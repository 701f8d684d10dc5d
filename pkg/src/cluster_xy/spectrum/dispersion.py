"""
Closed-form single-mode kernels of the Cluster-XY chain.

After the Jordan-Wigner and Fourier transforms the chain splits into independent ``(k, -k)`` pairs,
each described by the two coefficients

    ε_k = cos 2k - (λx + λy) cos k - h
    δ_k = sin 2k - (λx - λy) sin k

with Bogoliubov quasiparticle energy ``Δ_k = sqrt(ε_k² + δ_k²)`` (many-body excitation ``2Δ_k``).

Provides:
    :func:`epsilon`, :func:`delta_coefficient`, :func:`quasiparticle_energy`: the dispersion.
    :func:`bogoliubov_angle`: ground-state branch of ``θ_k``, gapless modes give 0 with a warning.
    :func:`group_velocity`: ``2 ∂kΔ_k`` from the analytic derivative.
    :func:`symmetry_partner`: the ``Z2 × Z2`` image ``(-λx, -λy, h)``.
    :func:`mode_table`: every quantity on a ``MomentumGrid``.
    :func:`vacuum_energy`: free-fermion sector ground energy.
    :func:`sector_vacuum_is_ground`: parity check of the sector vacuum.

All kernels accept scalars or numpy arrays of momenta.
"""

import logging
import warnings

import numpy as np

from core import (
    NO_FLAGS,
    NUMERICS,
    CouplingPoint,
    Flag,
    FloatArray,
    GaplessModeWarning,
    ModeTable,
    MomentumGrid,
    ParitySector,
)

log = logging.getLogger(__name__)

type Momentum = float | FloatArray


def epsilon(k: Momentum, point: CouplingPoint) -> Momentum:
    """``ε_k = cos 2k - (λx + λy) cos k - h``."""
    return np.cos(2 * k) - (point.lambda_x + point.lambda_y) * np.cos(k) - point.h


def delta_coefficient(k: Momentum, point: CouplingPoint) -> Momentum:
    """``δ_k = sin 2k - (λx - λy) sin k``, odd in ``k`` and zero at ``k ∈ {0, π}``."""
    return np.sin(2 * k) - (point.lambda_x - point.lambda_y) * np.sin(k)


def epsilon_derivative(k: Momentum, point: CouplingPoint) -> Momentum:
    return -2 * np.sin(2 * k) + (point.lambda_x + point.lambda_y) * np.sin(k)


def delta_derivative(k: Momentum, point: CouplingPoint) -> Momentum:
    return 2 * np.cos(2 * k) - (point.lambda_x - point.lambda_y) * np.cos(k)


def quasiparticle_energy(k: Momentum, point: CouplingPoint) -> Momentum:
    """``Δ_k = sqrt(ε_k² + δ_k²)``, non-negative."""
    return np.hypot(epsilon(k, point), delta_coefficient(k, point))


def _angle(eps: FloatArray, dlt: FloatArray, gapless: FloatArray) -> FloatArray:
    theta = np.arctan2(-dlt, eps)
    # atan2(-0.0, ε < 0) lands on -π, the range is (-π, π]
    theta = np.where(theta <= -np.pi, np.pi, theta)
    return np.where(gapless, 0.0, theta)


def bogoliubov_angle(k: Momentum, point: CouplingPoint) -> Momentum:
    """
    Bogoliubov angle on the ground-state branch.

    The unique ``θ ∈ (-π, π]`` with ``ε sin θ + δ cos θ = 0`` and ``ε cos θ - δ sin θ = Δ >= 0``,
    i.e. ``atan2(-δ, ε)``. Odd in ``k``.

    :return: ``θ_k``; for gapless modes (``Δ_k <= τ_gapless``) the value 0, signalled by ``GaplessModeWarning``.
    """
    eps = np.asarray(epsilon(k, point), dtype=np.float64)
    dlt = np.asarray(delta_coefficient(k, point), dtype=np.float64)
    gapless = np.hypot(eps, dlt) <= NUMERICS.TAU_GAPLESS
    if np.any(gapless):
        warnings.warn(f"bogoliubov angle requested at a gapless mode of {point}", GaplessModeWarning, stacklevel=2)
    theta = _angle(eps, dlt, gapless)
    return float(theta) if theta.ndim == 0 else theta


def group_velocity(k: Momentum, point: CouplingPoint) -> Momentum:
    """
    Group velocity ``2 ∂kΔ_k = 2 (ε ε' + δ δ') / Δ`` from the analytic derivatives of ``ε`` and ``δ``.

    :return: velocity; 0 for gapless modes, signalled by ``GaplessModeWarning``.
    """
    velocity, gapless = _group_velocity(np.asarray(k, dtype=np.float64), point)
    if np.any(gapless):
        warnings.warn(f"group velocity requested at a gapless mode of {point}", GaplessModeWarning, stacklevel=2)
    return float(velocity) if velocity.ndim == 0 else velocity


def _group_velocity(k: FloatArray, point: CouplingPoint) -> tuple[FloatArray, FloatArray]:
    eps = epsilon(k, point)
    dlt = delta_coefficient(k, point)
    energy = np.hypot(eps, dlt)
    gapless = energy <= NUMERICS.TAU_GAPLESS
    slope = eps * epsilon_derivative(k, point) + dlt * delta_derivative(k, point)
    safe = np.where(gapless, 1.0, energy)
    return np.where(gapless, 0.0, 2 * slope / safe), gapless


def symmetry_partner(point: CouplingPoint) -> CouplingPoint:
    """
    Image ``(-λx, -λy, h)`` under the ``Z2 × Z2`` map of the cluster state.

    The two points are unitarily equivalent; their dispersions agree under ``k -> π - k``.
    """
    return CouplingPoint(-point.lambda_x, -point.lambda_y, point.h)


def mode_table(grid: MomentumGrid, point: CouplingPoint) -> ModeTable:
    """
    Evaluates every single-mode quantity of ``point`` on ``grid``.

    One row per paired momentum; unpaired momenta (q = 1) are recorded with ``ε`` only.
    Gapless modes get ``θ = 0``, a ``True`` entry in ``gapless`` and ``Flag.GAPLESS_MODE`` on the table.
    """
    k = grid.paired_momenta
    eps = epsilon(k, point)
    dlt = delta_coefficient(k, point)
    energy = np.hypot(eps, dlt)
    gapless = energy <= NUMERICS.TAU_GAPLESS
    unpaired_eps = epsilon(grid.unpaired_momenta, point)

    flags = NO_FLAGS
    if gapless.any() or np.any(np.abs(unpaired_eps) <= NUMERICS.TAU_GAPLESS):
        flags |= Flag.GAPLESS_MODE
        log.debug("Mode table has gapless modes", extra={"point": point, "grid": grid.label})
    if not sector_vacuum_is_ground(point, grid.sector):
        flags |= Flag.SECTOR_EXCITED

    return ModeTable(
        grid=grid,
        point=point,
        epsilon=eps,
        delta=dlt,
        energy=energy,
        theta=_angle(eps, dlt, gapless),
        gapless=gapless,
        unpaired_epsilon=unpaired_eps,
        flags=flags,
    )


def sector_vacuum_is_ground(point: CouplingPoint, sector: ParitySector | int) -> bool:
    """
    Whether the free-fermion vacuum lies in ``sector``.

    Paired modes always contribute an even fermion number. In sector q = 1 the two unpaired modes are
    occupied according to the sign of ``ε_0`` and ``ε_π``, and the required odd parity holds only when those
    signs differ, i.e. strictly between the planes ``h = ±(λx + λy) + 1``.
    """
    if ParitySector(sector) is ParitySector.EVEN:
        return True
    eps_zero = 1 - (point.lambda_x + point.lambda_y) - point.h
    eps_pi = 1 + (point.lambda_x + point.lambda_y) - point.h
    return eps_zero * eps_pi < 0


def vacuum_energy(table: ModeTable) -> float:
    """
    Free-fermion sector vacuum energy ``-2 Σ_paired Δ_k - Σ_unpaired |ε_k|``.

    It equals the sector ground energy whenever ``sector_vacuum_is_ground`` holds.
    """
    return float(-2 * np.sum(table.energy) - np.sum(np.abs(table.unpaired_epsilon)))
