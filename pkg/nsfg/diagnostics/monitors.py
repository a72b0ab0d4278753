from typing import NamedTuple

from nsfg.fields import integrate
from nsfg.models import SystemState


class PositivityReport(NamedTuple):
    mass: float
    min_rho: float
    min_theta: float


def positivity_and_mass(state: SystemState) -> PositivityReport:
    """∫ρ and the pointwise minima of ρ and θ."""
    return PositivityReport(integrate(state.rho), state.rho.min(), state.theta.min())
