from nsfg.transport.continuity import (
    DENSITY_FLOOR,
    DensityStepReport,
    advective_dt_bound,
    check_density,
    density_rate,
    mass_flux,
    step_density,
)

__all__ = [
    "DENSITY_FLOOR",
    "DensityStepReport",
    "advective_dt_bound",
    "check_density",
    "density_rate",
    "mass_flux",
    "step_density",
]
