import math
import warnings

import numpy as np
import pytest

from core import NO_FLAGS, NUMERICS, CouplingPoint, Flag, GaplessModeWarning, ParitySector, momentum_grid
from spectrum import (
    Surface,
    bogoliubov_angle,
    classify,
    delta_coefficient,
    epsilon,
    gap,
    gap_location,
    golden_section,
    group_velocity,
    max_group_velocity,
    mode_table,
    quasiparticle_energy,
    sector_vacuum_is_ground,
    surface_distance,
    surfaces_of,
    symmetry_partner,
    vacuum_energy,
)

from .conftest import CRITICAL, ORIGIN, P1


class TestDispersion:
    def test_epsilon_values(self):
        assert epsilon(0.0, ORIGIN) == pytest.approx(1.0)
        assert epsilon(np.pi / 2, CouplingPoint(1, 1, 0)) == pytest.approx(-1.0)
        assert epsilon(2 * np.pi / 3, CRITICAL) == pytest.approx(0.0, abs=1e-15)

    def test_delta_values(self, rng):
        for values in rng.uniform(-2, 2, size=(5, 3)):
            assert delta_coefficient(0.0, CouplingPoint.from_sequence(values)) == 0.0
        assert delta_coefficient(np.pi / 2, CouplingPoint(1, 1, 0)) == pytest.approx(0.0, abs=1e-15)
        assert delta_coefficient(np.pi / 4, CouplingPoint(1, 0, 0)) == pytest.approx(1 - math.sqrt(2) / 2)

    def test_energy_values(self):
        k = np.linspace(0, np.pi, 17)
        np.testing.assert_allclose(quasiparticle_energy(k, ORIGIN), 1.0)
        assert quasiparticle_energy(2 * np.pi / 3, CRITICAL) == pytest.approx(0.0, abs=1e-15)
        assert quasiparticle_energy(np.pi / 3, CRITICAL) == pytest.approx(2.0)

    def test_energy_at_critical_point_closed_form(self):
        k = np.linspace(0.01, np.pi, 200)
        np.testing.assert_allclose(quasiparticle_energy(k, CRITICAL), 2 * np.abs(np.sin(1.5 * k)), atol=1e-13)


class TestBogoliubovAngle:
    def test_origin(self):
        k = np.linspace(0.05, np.pi / 2 - 0.05, 11)
        np.testing.assert_allclose(bogoliubov_angle(k, ORIGIN), -2 * k, atol=1e-14)

    def test_aligned_and_anti_aligned(self):
        assert bogoliubov_angle(0.0, ORIGIN) == 0.0
        # δ = 0 and ε = -1 at k = 0
        assert bogoliubov_angle(0.0, CouplingPoint(0, 0, 2)) == pytest.approx(np.pi)

    def test_ground_state_branch(self, gapped_points):
        k = np.linspace(0.01, np.pi - 0.01, 101)
        for point in gapped_points:
            theta = bogoliubov_angle(k, point)
            eps, dlt = epsilon(k, point), delta_coefficient(k, point)
            np.testing.assert_allclose(eps * np.sin(theta) + dlt * np.cos(theta), 0.0, atol=1e-12)
            np.testing.assert_allclose(eps * np.cos(theta) - dlt * np.sin(theta), quasiparticle_energy(k, point))
            assert np.all((theta > -np.pi) & (theta <= np.pi))

    def test_odd_in_momentum(self, gapped_points):
        k = np.linspace(0.1, 3.0, 7)
        for point in gapped_points:
            np.testing.assert_allclose(bogoliubov_angle(-k, point), -bogoliubov_angle(k, point), atol=1e-14)

    def test_gapless_mode_warns(self):
        with pytest.warns(GaplessModeWarning):
            theta = bogoliubov_angle(2 * np.pi / 3, CRITICAL)
        assert theta == 0.0


class TestModeTable:
    def test_origin_table(self):
        table = mode_table(momentum_grid(4, 0), ORIGIN)
        np.testing.assert_allclose(table.energy, [1.0, 1.0])
        assert table.flags == NO_FLAGS

    def test_odd_sector_shape(self):
        table = mode_table(momentum_grid(4, 1), CouplingPoint(0.3, -0.2, 0.5))
        assert len(table) == 1
        assert table.unpaired_epsilon.shape == (2,)
        assert table.unpaired_epsilon[0] == pytest.approx(1 - 0.1 - 0.5)
        assert table.unpaired_epsilon[1] == pytest.approx(1 + 0.1 - 0.5)

    def test_critical_point_energies(self):
        table = mode_table(momentum_grid(400, 0), CRITICAL)
        np.testing.assert_allclose(table.energy, 2 * np.abs(np.sin(1.5 * table.k)), atol=1e-13)
        assert table.energy[0] == pytest.approx(2 * np.sin(3 * np.pi / 800))

    def test_rows_satisfy_invariants(self, gapped_points, sector):
        grid = momentum_grid(40, sector)
        for point in gapped_points:
            for row in mode_table(grid, point).rows():
                assert row.energy**2 == pytest.approx(row.epsilon**2 + row.delta**2, rel=1e-12)
                assert row.epsilon * math.sin(row.theta) + row.delta * math.cos(row.theta) == pytest.approx(0, abs=1e-12)
                assert row.epsilon * math.cos(row.theta) - row.delta * math.sin(row.theta) == pytest.approx(row.energy)

    def test_gapless_modes_flagged(self):
        table = mode_table(momentum_grid(6, 1), CRITICAL)
        # k = 2π/3 is a q = 1 momentum for N = 6
        assert table.gapless.any()
        assert Flag.GAPLESS_MODE in table.flags
        assert table.theta[table.gapless] == pytest.approx(0.0)

    def test_excited_odd_sector_flagged(self):
        # ε_0 and ε_π share their sign
        point = CouplingPoint(0.2, 0.1, -1.0)
        assert not sector_vacuum_is_ground(point, 1)
        assert Flag.SECTOR_EXCITED in mode_table(momentum_grid(8, 1), point).flags
        assert Flag.SECTOR_EXCITED not in mode_table(momentum_grid(8, 0), point).flags

    def test_vacuum_energy_of_origin(self):
        assert vacuum_energy(mode_table(momentum_grid(8, 0), ORIGIN)) == pytest.approx(-8.0)


class TestGap:
    def test_known_values(self):
        assert gap(ORIGIN) == pytest.approx(1.0, abs=1e-12)
        assert gap(CRITICAL) <= 1e-6
        assert gap(P1) <= 1e-6

    def test_location_on_parabola(self):
        k_min, value = gap_location(CRITICAL)
        assert value <= 1e-6
        # the gap closes at k = 0 and at k = 2π/3
        assert min(abs(k_min), abs(k_min - 2 * np.pi / 3)) <= 1e-5

    def test_rejects_low_resolution(self):
        with pytest.raises(ValueError, match="resolution"):
            gap(ORIGIN, resolution=NUMERICS.MIN_RESOLUTION - 1)

    def test_golden_section_on_parabola(self):
        x, f = golden_section(lambda x: (x - 0.3) ** 2, 0.0, 1.0, 1e-10)
        assert x == pytest.approx(0.3, abs=1e-8)
        assert f == pytest.approx(0.0, abs=1e-15)

    def test_surfaces_are_gapless(self, rng):
        lam = rng.uniform(-2, 2, size=(50, 2))
        for lx, ly in lam:
            assert gap(CouplingPoint(lx, ly, 1 - (lx + ly))) <= 1e-6
            assert gap(CouplingPoint(lx, ly, 1 + (lx + ly))) <= 1e-6
        lx = rng.uniform(-2, 2, size=50)
        ly = lx + rng.uniform(-2, 2, size=50)
        for x, y in zip(lx, ly, strict=True):
            assert gap(CouplingPoint(x, y, y**2 - x * y - 1)) <= 1e-6

    def test_points_away_from_surfaces_are_gapped(self, rng):
        found = 0
        while found < 50:
            point = CouplingPoint.from_sequence(rng.uniform(-2, 2, size=3))
            if surface_distance(point) < 0.1:
                continue
            found += 1
            assert gap(point) >= 1e-3


class TestClassify:
    def test_critical_point(self):
        report = classify(CRITICAL)
        assert report.surfaces == (Surface.PLANE_MINUS, Surface.PARABOLA)
        assert report.is_gapless

    def test_multicritical_point(self):
        report = classify(P1)
        assert report.surfaces == (Surface.PLANE_PLUS, Surface.PARABOLA, Surface.MULTICRITICAL_LINE)
        assert report.is_gapless
        assert "MulticriticalLine" in report.label

    def test_origin(self):
        report = classify(ORIGIN)
        assert report.surfaces == ()
        assert not report.is_gapless
        assert report.label == ""
        assert report.gap_estimate == pytest.approx(1.0)

    def test_parabola_range_is_enforced(self):
        # on h = λy² - λxλy - 1 but |λx - λy| > 2
        lx, ly = -3.0, 0.5
        assert Surface.PARABOLA not in surfaces_of(CouplingPoint(lx, ly, ly**2 - lx * ly - 1))

    @pytest.mark.parametrize("tol", [0.0, -1e-9])
    def test_rejects_bad_tolerance(self, tol):
        with pytest.raises(ValueError, match="tol"):
            classify(ORIGIN, tol=tol)

    def test_partner_has_same_classification(self, rng):
        points = [CRITICAL, P1, ORIGIN, *(CouplingPoint.from_sequence(v) for v in rng.uniform(-2, 2, size=(10, 3)))]
        for point in points:
            assert classify(point).is_gapless == classify(symmetry_partner(point)).is_gapless


class TestGroupVelocity:
    def test_known_values(self):
        assert group_velocity(np.pi / 3, CRITICAL) == pytest.approx(0.0, abs=1e-12)
        assert group_velocity(1e-7, CRITICAL) == pytest.approx(6.0, abs=1e-6)
        np.testing.assert_allclose(group_velocity(np.linspace(0, np.pi, 9), ORIGIN), 0.0, atol=1e-14)

    def test_matches_finite_difference(self, gapped_points):
        k = np.linspace(0.1, np.pi - 0.1, 25)
        step = 1e-6
        for point in gapped_points:
            numeric = 2 * (quasiparticle_energy(k + step, point) - quasiparticle_energy(k - step, point)) / (2 * step)
            np.testing.assert_allclose(group_velocity(k, point), numeric, atol=1e-5)

    def test_maximum_at_critical_point(self):
        _, velocity = max_group_velocity(CRITICAL)
        assert velocity == pytest.approx(6.0, abs=1e-6)

    def test_maximum_at_origin(self):
        _, velocity = max_group_velocity(ORIGIN)
        assert velocity == pytest.approx(0.0, abs=1e-12)

    def test_maximum_matches_dense_scan(self):
        point = CouplingPoint(0, 0, 2)
        k_star, velocity = max_group_velocity(point)
        k = np.linspace(1e-4, np.pi - 1e-4, 200_001)
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", GaplessModeWarning)
            dense = np.abs(group_velocity(k, point)).max()
        assert velocity == pytest.approx(dense, abs=1e-6)
        assert abs(group_velocity(k_star, point)) == pytest.approx(velocity)


class TestSymmetryPartner:
    def test_mapping(self):
        assert symmetry_partner(CouplingPoint(1, 2, 3)) == CouplingPoint(-1, -2, 3)
        assert symmetry_partner(CouplingPoint(0, 0, 0.7)) == CouplingPoint(0, 0, 0.7)

    def test_spectrum_multisets_agree(self, rng, sector):
        for N in (8, 40, 400):
            grid = momentum_grid(N, sector)
            for values in rng.uniform(-2, 2, size=(5, 3)):
                point = CouplingPoint.from_sequence(values)
                original = mode_table(grid, point)
                partner = mode_table(grid, symmetry_partner(point))
                np.testing.assert_allclose(np.sort(original.energy), np.sort(partner.energy), atol=1e-12)
                np.testing.assert_allclose(
                    np.sort(np.abs(original.unpaired_epsilon)),
                    np.sort(np.abs(partner.unpaired_epsilon)),
                    atol=1e-12,
                )

    def test_odd_sector_vacuum_condition(self):
        assert sector_vacuum_is_ground(ORIGIN, ParitySector.EVEN)
        # ε_0 = 1, ε_π = 1
        assert not sector_vacuum_is_ground(ORIGIN, ParitySector.ODD)
        # ε_0 = 1, ε_π = -1
        assert sector_vacuum_is_ground(CouplingPoint(-1, 0, 1), ParitySector.ODD)
