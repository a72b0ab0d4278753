"""Time stepping of d/dt(M[ρ]λ) = F(ρ, λ, θ) and the stability scan."""
import logging
import math
from typing import Literal, Optional

import numpy as np

from nsfg.basis import GalerkinVelocity, reconstruct
from nsfg.core.errors import ConvergenceError, StabilityError
from nsfg.fields import ScalarField
from nsfg.models import RegularizationParams, SystemState
from nsfg.momentum.forces import assemble_forces
from nsfg.momentum.mass import assemble_mass, weighted_gram
from nsfg.transport import advective_dt_bound, step_density

logger = logging.getLogger(__name__)

MomentumScheme = Literal["rk2", "picard"]

PICARD_TOL = 1e-10
PICARD_MAX_ITER = 50


def galerkin_rate(state: SystemState, params: RegularizationParams, rho_rate: ScalarField) -> np.ndarray:
    """λ_t = M⁻¹(F − M[ρ_t]λ) of the semi-discrete system."""
    mass = assemble_mass(state.rho, state.basis)
    forces = assemble_forces(state, params).total
    lam = state.velocity.lam
    return mass.solve(forces - weighted_gram(rho_rate.values, state.basis) @ lam)


def step_velocity(
    state: SystemState,
    params: RegularizationParams,
    dt: float,
    *,
    rho_next: Optional[ScalarField] = None,
    scheme: MomentumScheme = "rk2",
    tol: float = PICARD_TOL,
    max_iter: int = PICARD_MAX_ITER,
) -> GalerkinVelocity:
    """Advance λ by one step with the mass operator refreshed at the new density.

    ``rho_next`` is the density at t + dt; when omitted it is produced by one
    transport step from ``state``.
    """
    basis = state.basis
    if rho_next is None:
        rho_next = step_density(state.rho, state.u, params.eps, dt).rho_new
    momentum = assemble_mass(state.rho, basis).apply(state.velocity.lam)
    mass_next = assemble_mass(rho_next, basis)
    forces_now = assemble_forces(state, params).total

    def stage_forces(lam: np.ndarray) -> np.ndarray:
        stage = SystemState(rho_next, GalerkinVelocity(basis, lam), state.theta, state.t + dt)
        return assemble_forces(stage, params).total

    if scheme == "rk2":
        predictor = mass_next.solve(momentum + dt * forces_now)
        lam_new = mass_next.solve(momentum + 0.5 * dt * (forces_now + stage_forces(predictor)))
        return GalerkinVelocity(basis, lam_new)

    if scheme != "picard":
        raise ValueError(f"unknown momentum scheme {scheme!r}")
    lam = state.velocity.lam
    change = math.inf
    for iteration in range(1, max_iter + 1):
        updated = mass_next.solve(momentum + dt * stage_forces(lam))
        change = float(np.linalg.norm(updated - lam))
        lam = updated
        if change <= tol * max(1.0, float(np.linalg.norm(lam))):
            logger.debug("Momentum fixed point converged", extra={"iterations": iteration})
            return GalerkinVelocity(basis, lam)
    raise ConvergenceError("momentum implicit Euler", max_iter, change)


def stability_bounds(state: SystemState, params: RegularizationParams) -> dict[str, float]:
    """Largest stable dt per active term (inf when the term is off).

    Real-axis terms use the Heun limit 2/rate; oscillatory terms use 1/ω.
    """
    basis = state.basis
    k = basis.max_wavenumber
    rho_min, rho_max = state.rho.min(), state.rho.max()
    theta_max = max(state.theta.max(), 0.0)
    u = state.u
    u_sup = u.sup_norm()

    def limit(rate: float, factor: float) -> float:
        return math.inf if rate <= 0 else factor / rate

    eps_bi = params.eps_for("bi")
    eps_cold = params.eps_for("cold")
    eps_hyper = params.eps_for("hyper")
    return {
        "advection": advective_dt_bound(u),
        "viscous": limit(2.0 * rho_max * k**2 / rho_min, 2.0),
        "biharmonic": limit(eps_bi * k**4 / rho_min, 2.0),
        "drag0": limit(params.r0 / rho_min, 2.0),
        "drag1": limit(3.0 * params.r1 * rho_max * u_sup**2 / rho_min, 2.0),
        "pressure": limit(k * math.sqrt(theta_max), 1.0),
        "cold_pressure": limit(k * math.sqrt(11.0 * eps_cold * rho_min**-11.0), 1.0),
        "capillary": limit(k**2 * math.sqrt(params.kappa_q), 1.0),
        "hyper": limit(math.sqrt(eps_hyper * rho_max) * k**10, 1.0),
    }


def check_stability(state: SystemState, params: RegularizationParams, dt: float) -> dict[str, float]:
    """Raise StabilityError naming the most restrictive term that dt violates."""
    bounds = stability_bounds(state, params)
    term, bound = min(bounds.items(), key=lambda item: item[1])
    if dt > bound:
        logger.error("Stability bound violated", extra={"term": term, "dt": dt, "bound": bound})
        raise StabilityError(term, dt, bound)
    return bounds


def velocity_rate_field(state: SystemState, params: RegularizationParams, rho_rate: ScalarField):
    """u_t as a vector field."""
    return reconstruct(GalerkinVelocity(state.basis, galerkin_rate(state, params, rho_rate)))
