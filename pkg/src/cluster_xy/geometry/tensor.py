import logging
import warnings
from dataclasses import dataclass

import numpy as np

from core import NO_FLAGS, NUMERICS, Axis, CouplingPoint, Flag, FloatArray, GaplessModeWarning, MomentumGrid
from spectrum import delta_coefficient, epsilon

log = logging.getLogger(__name__)

PSD_TOLERANCE = 1e-10


def _theta_gradient(k: FloatArray, point: CouplingPoint) -> tuple[FloatArray, FloatArray]:
    eps = epsilon(k, point)
    dlt = delta_coefficient(k, point)
    energy_sq = eps**2 + dlt**2
    gapless = np.sqrt(energy_sq) <= NUMERICS.TAU_GAPLESS
    inv = np.where(gapless, 0.0, 1.0 / np.where(gapless, 1.0, energy_sq))
    cos_k, sin_k = np.cos(k), np.sin(k)
    gradient = np.stack(
        (
            -(cos_k * dlt - sin_k * eps) * inv,
            -(cos_k * dlt + sin_k * eps) * inv,
            -dlt * inv,
        ),
    )
    return gradient, gapless


def theta_gradient(k: float | FloatArray, point: CouplingPoint) -> FloatArray:
    """
    Gradient ``(∂θ/∂λx, ∂θ/∂λy, ∂θ/∂h)`` of the Bogoliubov angle.

    ``∂θ/∂λx = -(cos k δ - sin k ε)/Δ²``, ``∂θ/∂λy = -(cos k δ + sin k ε)/Δ²``, ``∂θ/∂h = -δ/Δ²``.

    :return: shape ``(3,)`` for a scalar ``k``, ``(3, n)`` for ``n`` momenta; zero columns at gapless modes,
        signalled by ``GaplessModeWarning``.
    """
    gradient, gapless = _theta_gradient(np.asarray(k, dtype=np.float64), point)
    if np.any(gapless):
        warnings.warn(f"theta gradient requested at a gapless mode of {point}", GaplessModeWarning, stacklevel=2)
    return gradient


@dataclass(frozen=True, slots=True, eq=False)
class QgtMatrix:
    """
    Quantum geometric tensor of the BCS ground state in the chart ``(λx, λy, h)``.

    Every pair state depends on the couplings only through its angle ``θ_k``, so the tensor is real:
    it equals the fidelity metric and the Berry curvature vanishes identically.

    :param entries: symmetric, positive semidefinite 3×3 array indexed by ``Axis``.
    :param grid: momentum grid of the sum.
    :param point: coupling point.
    :param flags: ``Flag.GAPLESS_MODE`` if modes were skipped.
    """

    entries: FloatArray
    grid: MomentumGrid
    point: CouplingPoint
    flags: Flag = NO_FLAGS

    def __getitem__(self, index: tuple[Axis, Axis]) -> float:
        a, b = index
        return float(self.entries[a, b])

    @property
    def metric(self) -> FloatArray:
        """Riemannian metric ``g_ab = Re T_ab``."""
        return self.entries

    @property
    def berry_curvature(self) -> FloatArray:
        """``F_ab = Im T_ab``, identically zero for this model."""
        return np.zeros_like(self.entries)

    @property
    def per_site(self) -> FloatArray:
        return self.entries / self.grid.N

    @property
    def eigenvalues(self) -> FloatArray:
        return np.linalg.eigvalsh(self.entries)

    @property
    def is_positive_semidefinite(self) -> bool:
        return bool(self.eigenvalues.min() >= -PSD_TOLERANCE)

    def susceptibility(self, direction, *, per_site: bool = False) -> float:
        """
        ``dᵀ T d`` along a unit ``direction``, clamped at zero.

        :raises ValueError: if ``direction`` is not a unit 3-vector.
        """
        vector = _unit_direction(direction)
        value = max(float(vector @ self.entries @ vector), 0.0)
        return value / self.grid.N if per_site else value


def quantum_geometric_tensor(point: CouplingPoint, grid: MomentumGrid) -> QgtMatrix:
    """
    ``T_ab = Σ_k (1/4) ∂aθ_k ∂bθ_k`` over the paired momenta of ``grid``.

    Gapless modes are left out of the sum and reported with ``Flag.GAPLESS_MODE``: on a critical surface the
    tensor is a diagnostic, not a converged value.
    """
    gradient, gapless = _theta_gradient(grid.paired_momenta, point)
    entries = 0.25 * gradient @ gradient.T
    entries = (entries + entries.T) / 2
    flags = Flag.GAPLESS_MODE if gapless.any() else NO_FLAGS
    if flags:
        log.info("QGT skipped gapless modes", extra={"point": point, "grid": grid.label, "skipped": int(gapless.sum())})
    return QgtMatrix(entries=entries, grid=grid, point=point, flags=flags)


def _unit_direction(direction) -> FloatArray:
    vector = np.asarray(direction, dtype=np.float64)
    msg: list[str] = []
    if vector.shape != (3,):
        msg.append(f"direction must have 3 components, given shape: {vector.shape}")
    elif not np.isclose(np.linalg.norm(vector), 1.0, rtol=0.0, atol=1e-9):
        msg.append(f"direction must be a unit vector, given norm: {np.linalg.norm(vector)!r}")
    if msg:
        raise ValueError("\n" + "\n".join(msg))
    return vector


def fidelity_susceptibility(
    point: CouplingPoint,
    direction,
    grid: MomentumGrid,
    *,
    per_site: bool = False,
) -> float:
    """
    Fidelity susceptibility ``χ_F = dᵀ T d`` along a unit ``direction`` of the coupling space.

    ``1 - F(p, p + δ d) = (δ²/2) χ_F + O(δ³)``.

    :param per_site: divide by ``N``.
    :raises ValueError: if ``direction`` is not a unit 3-vector.
    """
    _unit_direction(direction)
    tensor = quantum_geometric_tensor(point, grid)
    if tensor.flags:
        warnings.warn(f"susceptibility at {point} skips gapless modes", GaplessModeWarning, stacklevel=2)
    return tensor.susceptibility(direction, per_site=per_site)
