from nsfg.diagnostics.energy import (
    EnergyBreakdown,
    energy,
    energy_dissipation,
    energy_dissipation_residual,
    energy_monotonicity,
    mechanical_dissipation,
    pressure_work,
    viscous_dissipation,
)
from nsfg.diagnostics.entropy import (
    bd_entropy,
    bd_identity_residual,
    bd_rate,
    bd_rate_consistency,
    bd_terms,
    effective_velocity,
    galerkin_gap,
    r7_bound,
)
from nsfg.diagnostics.jungel import JungelResult, jungel_check, random_positive_density
from nsfg.diagnostics.log_energy import (
    MVCheck,
    WeightFunction,
    linear_decay,
    mv_functional,
    mv_functional_bound,
    mv_functional_untruncated,
    mv_inequality_check,
    mv_monotone_in_n,
)
from nsfg.diagnostics.monitors import PositivityReport, positivity_and_mass
from nsfg.diagnostics.records import CSV_COLUMNS, FunctionalRecord
from nsfg.diagnostics.renormalized import RenormalizedCheck, renormalized_inequality

__all__ = [
    "CSV_COLUMNS",
    "EnergyBreakdown",
    "FunctionalRecord",
    "JungelResult",
    "MVCheck",
    "PositivityReport",
    "RenormalizedCheck",
    "WeightFunction",
    "bd_entropy",
    "bd_identity_residual",
    "bd_rate",
    "bd_rate_consistency",
    "bd_terms",
    "effective_velocity",
    "galerkin_gap",
    "energy",
    "energy_dissipation",
    "energy_dissipation_residual",
    "energy_monotonicity",
    "jungel_check",
    "linear_decay",
    "mechanical_dissipation",
    "mv_functional",
    "mv_functional_bound",
    "mv_functional_untruncated",
    "mv_inequality_check",
    "mv_monotone_in_n",
    "positivity_and_mass",
    "pressure_work",
    "r7_bound",
    "random_positive_density",
    "renormalized_inequality",
    "viscous_dissipation",
]
