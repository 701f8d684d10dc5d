import numpy as np
import pytest

from core import CouplingPoint, ParitySector, momentum_grid
from spectrum import sample_noncritical_points

P1 = CouplingPoint(-1.5, 0.5, 0.0)
P2 = CouplingPoint(-2.0, 0.0, -1.0)
ORIGIN = CouplingPoint(0.0, 0.0, 0.0)
CRITICAL = CouplingPoint(0.0, 1.0, 0.0)


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240611)


@pytest.fixture
def gapped_points(rng) -> list[CouplingPoint]:
    return sample_noncritical_points(rng, 10)


@pytest.fixture
def odd_sector_points(rng) -> list[CouplingPoint]:
    """Gapped points whose free-fermion vacuum lies in the q = 1 sector."""
    return sample_noncritical_points(rng, 10, odd_sector_vacuum=True)


@pytest.fixture(params=[ParitySector.EVEN, ParitySector.ODD], ids=["q0", "q1"])
def sector(request) -> ParitySector:
    return request.param


@pytest.fixture
def small_grid():
    return momentum_grid(8, ParitySector.EVEN)
