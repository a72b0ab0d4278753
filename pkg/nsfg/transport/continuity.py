"""One step of the regularized continuity equation ρ_t + div(ρu) = εΔρ."""
import logging
import math
from dataclasses import dataclass
from typing import Literal

import numpy as np

from nsfg.core.errors import DensityFloorError, FieldError, GridError, StabilityError
from nsfg.fields import ScalarField, VectorField, dealias_vector, divergence, integrate, laplacian, lp_norm
from nsfg.fields.ops import forward, inverse

logger = logging.getLogger(__name__)

DENSITY_FLOOR = 1e-10
CFL_FRACTION = 0.5

TransportScheme = Literal["imex", "strang"]


@dataclass(frozen=True)
class DensityStepReport:
    rho_new: ScalarField
    mass_drift: float  # relative change of ∫ρ
    min_rho: float
    max_rho: float
    bound_check: bool


def check_density(rho: ScalarField) -> None:
    """Reject densities the ρ^{-10} terms cannot tolerate."""
    low = rho.min()
    if low < DENSITY_FLOOR:
        raise DensityFloorError(f"min density {low:.3e} below floor {DENSITY_FLOOR:.0e}")


def advective_dt_bound(u: VectorField) -> float:
    """0.5·h/‖u‖∞, infinite for a fluid at rest."""
    speed = u.sup_norm()
    if speed == 0.0:
        return math.inf
    return CFL_FRACTION * u.grid.spacing / speed


def mass_flux(rho: ScalarField, u: VectorField) -> VectorField:
    return dealias_vector(u * rho)


def density_rate(rho: ScalarField, u: VectorField, eps: float) -> ScalarField:
    """ρ_t of the semi-discrete equation: εΔρ − div P(ρu)."""
    advective = _advection_rate(rho, u)
    if eps == 0.0:
        return advective
    return laplacian(rho) * eps + advective


def _advection_rate(rho: ScalarField, u: VectorField) -> ScalarField:
    return -divergence(mass_flux(rho, u))


def step_density(
    rho: ScalarField,
    u: VectorField,
    eps: float,
    dt: float,
    scheme: TransportScheme = "imex",
) -> DensityStepReport:
    """Advance ρ by one step; diffusion implicit in Fourier space, advection explicit.

    Args:
        rho: Current density, strictly positive.
        u: Velocity at the start of the step.
        eps: Diffusion coefficient ε >= 0.
        dt: Time step; must not exceed ``advective_dt_bound(u)``.
        scheme: ``"imex"`` (backward-Euler diffusion, forward-Euler advection)
            or ``"strang"`` (exact half-step diffusion around a Heun advection step).

    Returns:
        DensityStepReport with the new density and the envelope check.
    """
    if rho.grid != u.grid:
        raise GridError("grid mismatch between density and velocity")
    if dt <= 0 or eps < 0:
        raise FieldError(f"need dt > 0 and eps >= 0, got dt={dt}, eps={eps}")
    if rho.min() <= 0:
        raise DensityFloorError(f"nonpositive initial density (min {rho.min():.3e})")
    check_density(rho)
    bound = advective_dt_bound(u)
    if dt > bound:
        raise StabilityError("advection", dt, bound)

    k2 = rho.grid.k_squared
    if scheme == "imex":
        spectrum = forward(rho) + dt * forward(_advection_rate(rho, u))
        rho_new = inverse(rho.grid, spectrum / (1.0 + dt * eps * k2))
    elif scheme == "strang":
        half = np.exp(-0.5 * dt * eps * k2)
        rho_half = inverse(rho.grid, forward(rho) * half)
        a0 = _advection_rate(rho_half, u)
        a1 = _advection_rate(rho_half + a0 * dt, u)
        rho_adv = rho_half + (a0 + a1) * (0.5 * dt)
        rho_new = inverse(rho.grid, forward(rho_adv) * half)
    else:
        raise FieldError(f"unknown transport scheme {scheme!r}")

    mass_before = integrate(rho)
    mass_drift = (integrate(rho_new) - mass_before) / mass_before

    # extremes move at most at rate ‖div u‖∞; tol absorbs the O(dt²) defect of one explicit step
    growth = dt * lp_norm(divergence(u), "inf")
    tol = growth**2 + 1e-12
    min_new, max_new = rho_new.min(), rho_new.max()
    lower = rho.min() * math.exp(-growth) * (1.0 - tol)
    upper = rho.max() * math.exp(growth) * (1.0 + tol)
    bound_check = bool(min_new > 0 and min_new >= lower and max_new <= upper)
    if not bound_check:
        logger.warning(
            "Density left its transport envelope",
            extra={"min_rho": min_new, "lower": lower, "max_rho": max_new, "upper": upper},
        )
    return DensityStepReport(rho_new, mass_drift, min_new, max_new, bound_check)
