from nsfg.thermal.laws import (
    H_FAMILIES,
    HeatLaw,
    HFunction,
    admissibility_margins,
    conductivity,
    power_h,
    ratio_h,
    reciprocal_h,
    unit_h,
    validate_h,
)
from nsfg.thermal.primitives import K_h, K_inverse, K_of, Q_h
from nsfg.thermal.solver import (
    ThermalStepReport,
    explicit_sources,
    renormalized_rate,
    renormalized_rate_terms,
    renormalized_residual,
    renormalized_storage,
    step_temperature,
    viscous_heating,
)

__all__ = [
    "H_FAMILIES",
    "HFunction",
    "HeatLaw",
    "K_h",
    "K_inverse",
    "K_of",
    "Q_h",
    "ThermalStepReport",
    "admissibility_margins",
    "conductivity",
    "explicit_sources",
    "power_h",
    "ratio_h",
    "reciprocal_h",
    "renormalized_rate",
    "renormalized_rate_terms",
    "renormalized_residual",
    "renormalized_storage",
    "step_temperature",
    "unit_h",
    "validate_h",
]
