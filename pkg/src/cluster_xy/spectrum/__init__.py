# spectrum/__init__.py

from .criticality import (
    CriticalityReport,
    Surface,
    classify,
    multicritical_residual,
    parabola_residual,
    plane_minus_residual,
    plane_plus_residual,
    sample_noncritical_points,
    surface_distance,
    surfaces_of,
)
from .dispersion import (
    bogoliubov_angle,
    delta_coefficient,
    epsilon,
    group_velocity,
    mode_table,
    quasiparticle_energy,
    sector_vacuum_is_ground,
    symmetry_partner,
    vacuum_energy,
)
from .extremum import gap, gap_location, golden_section, max_group_velocity, minimize_over_momenta

__all__ = [
    "CriticalityReport",
    "Surface",
    "bogoliubov_angle",
    "classify",
    "delta_coefficient",
    "epsilon",
    "gap",
    "gap_location",
    "golden_section",
    "group_velocity",
    "max_group_velocity",
    "minimize_over_momenta",
    "mode_table",
    "multicritical_residual",
    "parabola_residual",
    "plane_minus_residual",
    "plane_plus_residual",
    "quasiparticle_energy",
    "sample_noncritical_points",
    "sector_vacuum_is_ground",
    "surface_distance",
    "surfaces_of",
    "symmetry_partner",
    "vacuum_energy",
]
