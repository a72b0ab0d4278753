"""Shared simulation types: regularization parameters and the discrete state."""
from dataclasses import dataclass, replace
from typing import Literal, Optional

from pydantic import BaseModel, ConfigDict, Field

from nsfg.basis import GalerkinBasis, GalerkinVelocity
from nsfg.core.errors import GridError
from nsfg.fields import Grid, ScalarField, VectorField

EpsRole = Literal["bi", "cold", "cross", "hyper", "mass", "sink", "coupling"]


class EpsOverrides(BaseModel):
    """Per-term replacements for the global ε; unset terms follow ε."""

    model_config = ConfigDict(extra="forbid", frozen=True)

    eps_bi: Optional[float] = Field(default=None, ge=0)
    eps_cold: Optional[float] = Field(default=None, ge=0)
    eps_cross: Optional[float] = Field(default=None, ge=0)
    eps_hyper: Optional[float] = Field(default=None, ge=0)
    eps_mass: Optional[float] = Field(default=None, ge=0)
    eps_sink: Optional[float] = Field(default=None, ge=0)
    eps_coupling: Optional[float] = Field(default=None, ge=0)


class RegularizationParams(BaseModel):
    """Physical and regularization coefficients of the approximate system."""

    model_config = ConfigDict(extra="forbid", frozen=True)

    eps: float = Field(default=1e-3, ge=0)
    kappa_q: float = Field(default=0.0, ge=0)  # capillarity
    r0: float = Field(default=0.0, ge=0)
    r1: float = Field(default=0.0, ge=0)
    alpha: float = Field(default=2.0, ge=2)
    kappa0: float = Field(default=1.0, gt=0)
    c1: float = Field(default=0.5, gt=0, le=1)
    overrides: EpsOverrides = Field(default_factory=EpsOverrides)

    def eps_for(self, role: EpsRole) -> float:
        value = getattr(self.overrides, f"eps_{role}")
        return self.eps if value is None else value


@dataclass(frozen=True, eq=False)
class SystemState:
    """(ρ, λ, θ, t): the full discrete state of the approximate system."""

    rho: ScalarField
    velocity: GalerkinVelocity
    theta: ScalarField
    t: float = 0.0

    def __post_init__(self) -> None:
        grid = self.rho.grid
        if self.theta.grid != grid or self.velocity.basis.grid != grid:
            raise GridError("state components live on different grids")

    @property
    def grid(self) -> Grid:
        return self.rho.grid

    @property
    def basis(self) -> GalerkinBasis:
        return self.velocity.basis

    @property
    def u(self) -> VectorField:
        return self.velocity.field

    def advanced(self, rho: ScalarField, velocity: GalerkinVelocity, theta: ScalarField, dt: float) -> "SystemState":
        return replace(self, rho=rho, velocity=velocity, theta=theta, t=self.t + dt)
