import numpy as np
import pytest

from core import CouplingPoint, Flag, ParitySector, SizeDomainError, momentum_grid
from geometry import ground_state_overlap
from oracle import (
    TOLERANCES,
    build_hamiltonian,
    check_oracle_size,
    energy_offset_flags,
    exact_loschmidt,
    exact_overlap,
    exact_overlap_flags,
    exact_pair_overlap_flags,
    fix_phase,
    parity_operator,
    pauli_string,
    run_cross_check,
    sector_ground_state,
    sector_indices,
    sector_spectrum,
)
from quench import QuenchProtocol, loschmidt_echo
from spectrum import symmetry_partner

from .conftest import ORIGIN

SKIPPED = Flag.DEGENERATE | Flag.UNRESOLVED_PAIRS


@pytest.fixture
def sector_points(sector, gapped_points, odd_sector_points) -> list[CouplingPoint]:
    return odd_sector_points if sector is ParitySector.ODD else gapped_points


def _pairs(points):
    return zip(points, points[1:], strict=False)


class TestHamiltonian:
    def test_cluster_point_spectrum(self):
        hamiltonian = build_hamiltonian(4, ORIGIN)
        energies = hamiltonian.eigenvalues()
        assert energies[0] == pytest.approx(-4.0)
        assert np.isclose(energies[:, np.newaxis], [-4, -2, 0, 2, 4], atol=1e-10).any(axis=1).all()

    def test_strong_field_polarises(self):
        state = sector_ground_state(build_hamiltonian(8, CouplingPoint(0, 0, 100)), ParitySector.EVEN)
        assert state.energy == pytest.approx(-800.0, abs=0.1)
        assert abs(state.vector[0]) == pytest.approx(1.0, abs=1e-3)

    def test_parity_operator(self):
        parity = parity_operator(6).toarray()
        np.testing.assert_array_equal(parity @ parity, np.eye(64))
        assert np.trace(parity) == 0
        matrix = build_hamiltonian(6, CouplingPoint(0.3, -0.7, 0.4)).matrix
        np.testing.assert_allclose(matrix @ parity, parity @ matrix, atol=1e-12)

    def test_hermitian(self):
        hamiltonian = build_hamiltonian(6, CouplingPoint(0.3, -0.7, 0.4))
        assert hamiltonian.hermiticity_residual() <= 1e-13
        assert hamiltonian.dimension == 64

    def test_site_zero_is_most_significant(self):
        np.testing.assert_array_equal(pauli_string(2, {0: "Z"}).diagonal(), [1, 1, -1, -1])
        np.testing.assert_array_equal(sector_indices(2, 0), [0, 3])
        np.testing.assert_array_equal(sector_indices(2, 1), [1, 2])

    @pytest.mark.parametrize("size", [2, 5, 14])
    def test_rejects_sizes(self, size):
        with pytest.raises(SizeDomainError):
            check_oracle_size(size)
        with pytest.raises(SizeDomainError):
            build_hamiltonian(size, ORIGIN)


def test_fix_phase():
    np.testing.assert_allclose(fix_phase(np.array([0.0, -2j])), [0.0, 1.0])
    vector = fix_phase(np.array([0.3 - 0.1j, 0.5j, -0.2]))
    assert np.linalg.norm(vector) == pytest.approx(1.0)
    pivot = vector[np.argmax(np.abs(vector))]
    assert pivot.imag == pytest.approx(0.0)
    assert pivot.real > 0


class TestClosedFormsAgainstOracle:
    def test_energy_offset_is_constant(self, sector, sector_points):
        offsets = []
        for point in sector_points:
            offset, flags = energy_offset_flags(8, sector, point)
            if flags & SKIPPED:
                continue
            offsets.append(offset)
        assert np.ptp(offsets) <= TOLERANCES.OFFSET

    def test_cluster_point_offset_vanishes(self):
        offset, _ = energy_offset_flags(8, ParitySector.EVEN, ORIGIN)
        assert offset == pytest.approx(0.0, abs=1e-10)

    def test_fidelity(self, sector, sector_points):
        grid = momentum_grid(8, sector)
        for first, second in _pairs(sector_points):
            exact, flags = exact_overlap_flags(8, first, second, sector)
            if flags & SKIPPED:
                continue
            assert ground_state_overlap(first, second, grid).fidelity == pytest.approx(exact, abs=TOLERANCES.FIDELITY)

    def test_opposite_fields(self):
        first, second = CouplingPoint(0, 0, 3), CouplingPoint(0, 0, -3)
        closed = ground_state_overlap(first, second, momentum_grid(8, 0)).fidelity
        assert exact_overlap(8, first, second, ParitySector.EVEN) == pytest.approx(closed, abs=1e-10)

    def test_self_overlap(self, gapped_points):
        assert exact_overlap(6, gapped_points[0], gapped_points[0], 0) == pytest.approx(1.0)

    @pytest.mark.parametrize("size", [4, 6, 8])
    def test_loschmidt_echo(self, size, sector, sector_points):
        grid = momentum_grid(size, sector)
        times = np.linspace(0, 10, 201)
        for first, second in _pairs(sector_points[:5]):
            protocol = QuenchProtocol(first, second, grid)
            exact = exact_loschmidt(size, protocol, times)
            if exact.flags & SKIPPED:
                continue
            np.testing.assert_allclose(loschmidt_echo(protocol, times).values, exact.values, atol=TOLERANCES.ECHO)

    def test_loschmidt_rejects_mismatched_size(self):
        protocol = QuenchProtocol(ORIGIN, CouplingPoint(0, 0, 1), momentum_grid(6, 0))
        with pytest.raises(ValueError, match="does not match"):
            exact_loschmidt(8, protocol, [0.0, 1.0])

    def test_pair_overlap(self, sector, sector_points):
        grid = momentum_grid(8, sector)
        checked = 0
        for first, second in _pairs(sector_points):
            exact, flags = exact_pair_overlap_flags(8, first, second, sector)
            if flags & SKIPPED:
                continue
            closed = ground_state_overlap(first, second, grid).pair_weight
            assert closed == pytest.approx(exact, abs=TOLERANCES.PAIR_OVERLAP)
            checked += 1
        assert checked > 0

    def test_partner_spectra_agree(self, sector, gapped_points):
        for point in gapped_points[:4]:
            original = sector_spectrum(build_hamiltonian(6, point), sector).energies
            partner = sector_spectrum(build_hamiltonian(6, symmetry_partner(point)), sector).energies
            np.testing.assert_allclose(original, partner, atol=TOLERANCES.PARTNER_SPECTRUM)


class TestCrossCheck:
    def test_small_chain_passes(self):
        report = run_cross_check(6, count=4, seed=3)
        assert report.passed, [result.row() for result in report.results if not result.passed]
        assert len(report.results) == 10
        assert {result.sector for result in report.results} == set(ParitySector)

    def test_reproducible(self):
        first = run_cross_check(4, count=3, seed=11, sectors=(ParitySector.EVEN,))
        second = run_cross_check(4, count=3, seed=11, sectors=(ParitySector.EVEN,))
        assert [result.row() for result in first.results] == [result.row() for result in second.results]

    def test_rejects_large_chain(self):
        with pytest.raises(SizeDomainError):
            run_cross_check(16, count=1)
