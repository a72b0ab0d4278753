from nsfg.momentum.balance import kinetic_energy_balance
from nsfg.momentum.forces import FORCE_TERMS, ForceBreakdown, assemble_forces, capillary_strong_form, strong_forces
from nsfg.momentum.mass import MassOperator, assemble_mass, weighted_gram
from nsfg.momentum.stepper import (
    check_stability,
    galerkin_rate,
    stability_bounds,
    step_velocity,
    velocity_rate_field,
)

__all__ = [
    "FORCE_TERMS",
    "ForceBreakdown",
    "MassOperator",
    "assemble_forces",
    "assemble_mass",
    "capillary_strong_form",
    "check_stability",
    "galerkin_rate",
    "kinetic_energy_balance",
    "stability_bounds",
    "step_velocity",
    "strong_forces",
    "velocity_rate_field",
]
