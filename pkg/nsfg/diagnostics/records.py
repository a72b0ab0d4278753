"""One row of run diagnostics."""
import math

from pydantic import BaseModel, ConfigDict, model_validator

CSV_COLUMNS = (
    "t",
    "mass",
    "E_total",
    "E_kinetic",
    "E_cold",
    "E_capillary",
    "E_hyper",
    "E_internal",
    "bd_entropy",
    "mv_n",
    "min_rho",
    "min_theta",
    "res_energy",
    "res_bd",
    "res_thermal",
)

ENERGY_PARTS = ("E_kinetic", "E_cold", "E_capillary", "E_hyper", "E_internal")


class FunctionalRecord(BaseModel):
    model_config = ConfigDict(frozen=True)

    t: float
    mass: float
    E_total: float
    E_kinetic: float
    E_cold: float
    E_capillary: float
    E_hyper: float
    E_internal: float
    bd_entropy: float
    mv_n: float
    min_rho: float
    min_theta: float
    res_energy: float = math.nan
    res_bd: float = math.nan
    res_thermal: float = math.nan

    @model_validator(mode="after")
    def _total_matches_parts(self) -> "FunctionalRecord":
        parts = sum(getattr(self, name) for name in ENERGY_PARTS)
        if abs(self.E_total - parts) > 1e-12 * max(1.0, abs(parts)):
            raise ValueError(f"E_total {self.E_total!r} differs from the sum of its parts {parts!r}")
        return self

    def as_row(self) -> list[float]:
        return [getattr(self, name) for name in CSV_COLUMNS]
