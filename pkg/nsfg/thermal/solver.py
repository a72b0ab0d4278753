"""Semi-implicit step of the approximate thermal energy equation.

Conservative form, W = (ε + ρ)θ:

    ∂t W + div(ρθu) − div(κ(θ)∇θ) + εθ^{α+1} = 𝕊:∇u − ρθ div u,   𝕊 = 2ρD(u).

Conduction is implicit with the conductivity lagged in a fixed-point loop;
transport and sources are explicit at the old state.
"""
import logging
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.sparse.linalg import LinearOperator, cg

from nsfg.core.errors import ConvergenceError, DensityFloorError, HistoryError, NegativeTemperatureError, ThermalSolveError
from nsfg.fields import (
    ScalarField,
    VectorField,
    dealias_vector,
    divergence,
    gradient,
    integrate,
    laplacian,
    lp_norm,
    strain,
    tensor_contract,
)
from nsfg.fields.ops import derivative_symbol, forward, inverse
from nsfg.models import RegularizationParams, SystemState
from nsfg.thermal.laws import HeatLaw, HFunction, conductivity
from nsfg.thermal.primitives import Q_h

logger = logging.getLogger(__name__)

PICARD_TOL = 1e-10
PICARD_MAX_ITER = 50
CG_RTOL = 1e-12


@dataclass(frozen=True)
class ThermalStepReport:
    theta_new: ScalarField
    min_theta: float
    balance_residual: float  # L² norm of the pointwise residual at the new state
    clipped_mass: float = 0.0
    integrated_residual: float = 0.0
    picard_iterations: int = 0


def viscous_heating(rho: ScalarField, u: VectorField) -> ScalarField:
    """𝕊:∇u = 2ρ|D(u)|² for μ(ρ) = ρ, λ(ρ) = 0."""
    d = strain(u)
    return rho * tensor_contract(d, d) * 2.0


def heat_flux_divergence(theta: ScalarField, kappa: ScalarField) -> ScalarField:
    """div(κ∇θ)."""
    return divergence(gradient(theta) * kappa)


def explicit_sources(
    theta: ScalarField, rho: ScalarField, u: VectorField, law: HeatLaw, eps_sink: float
) -> ScalarField:
    """−div P(ρθu) + 𝕊:∇u − ρθ div u − εθ^{α+1}."""
    rho_theta = rho * theta
    transport = -divergence(dealias_vector(u * rho_theta))
    total = transport + viscous_heating(rho, u) - rho_theta * divergence(u)
    if eps_sink:
        total = total - (theta ** (law.alpha + 1.0)) * eps_sink
    return total


def _conduction_solve(
    mass: ScalarField,
    kappa: ScalarField,
    rhs: np.ndarray,
    guess: np.ndarray,
    dt: float,
) -> np.ndarray:
    """Solve mass·θ − dt·div(κ∇θ) = rhs with preconditioned conjugate gradients."""
    grid = mass.grid
    shape = grid.shape
    symbols = [derivative_symbol(grid, axis, 1) for axis in range(grid.dim)]

    def matvec(x: np.ndarray) -> np.ndarray:
        x_hat = forward(ScalarField(grid, x.reshape(shape)))
        flux_hat = np.zeros(grid.spectral_shape, dtype=complex)
        for s in symbols:
            flux = inverse(grid, x_hat * s) * kappa
            flux_hat += forward(flux) * s
        return (mass.values * x.reshape(shape) - dt * inverse(grid, flux_hat).values).ravel()

    # constant-coefficient inverse as preconditioner
    precond_symbol = 1.0 / (float(mass.values.mean()) + dt * float(kappa.values.mean()) * grid.k_squared)

    def precondition(x: np.ndarray) -> np.ndarray:
        x_hat = forward(ScalarField(grid, x.reshape(shape)))
        return inverse(grid, x_hat * precond_symbol).values.ravel()

    n = grid.size
    operator = LinearOperator((n, n), matvec=matvec, dtype=float)
    preconditioner = LinearOperator((n, n), matvec=precondition, dtype=float)
    solution, info = cg(operator, rhs.ravel(), x0=guess.ravel(), rtol=CG_RTOL, atol=0.0, maxiter=10 * n, M=preconditioner)
    if info != 0:
        raise ThermalSolveError(f"conjugate gradients stopped with info={info}")
    return solution.reshape(shape)


def step_temperature(
    theta: ScalarField,
    rho: ScalarField,
    u: VectorField,
    law: HeatLaw,
    eps: float,
    dt: float,
    *,
    rho_next: Optional[ScalarField] = None,
    eps_sink: Optional[float] = None,
    tol: float = PICARD_TOL,
    max_iter: int = PICARD_MAX_ITER,
) -> ThermalStepReport:
    """Advance θ by one step.

    Args:
        theta: Temperature at the old time, nonnegative.
        rho: Density at the old time.
        u: Velocity at the old time.
        law: Heat-conduction law.
        eps: ε in the (ε+ρ) storage factor.
        dt: Time step.
        rho_next: Density at the new time; defaults to ``rho`` (static density).
        eps_sink: ε of the εθ^{α+1} sink; defaults to ``eps``.
        tol: Relative tolerance of the conductivity fixed point.
        max_iter: Iteration cap of the conductivity fixed point.

    Returns:
        ThermalStepReport with the clipped new temperature and the residual of the discrete equation.
    """
    if theta.min() < 0:
        raise NegativeTemperatureError(f"negative input temperature {theta.min():.3e}")
    if rho.min() <= 0 or (rho_next is not None and rho_next.min() <= 0):
        raise DensityFloorError("nonpositive density in thermal step")
    rho_new = rho if rho_next is None else rho_next
    eps_sink = eps if eps_sink is None else eps_sink

    stored = (rho + eps) * theta
    sources = explicit_sources(theta, rho, u, law, eps_sink)
    rhs = stored + sources * dt
    mass = rho_new + eps

    current = theta.values
    for iteration in range(1, max_iter + 1):
        kappa = conductivity(rho_new, ScalarField(theta.grid, current), law)
        updated = _conduction_solve(mass, kappa, rhs.values, current, dt)
        change = float(np.max(np.abs(updated - current)))
        current = updated
        if change <= tol * max(1.0, float(np.max(np.abs(current)))):
            break
    else:
        raise ConvergenceError("thermal conductivity fixed point", max_iter, change)

    # conduction integrates to zero: restore ∫mass·θ = ∫rhs exactly
    shift = (integrate(rhs) - integrate(mass * ScalarField(theta.grid, current))) / integrate(mass)
    current = current + shift

    clipped_mass = float(np.sum(mass.values * np.maximum(-current, 0.0)) * theta.grid.cell_volume)
    theta_new = ScalarField(theta.grid, np.maximum(current, 0.0))
    if clipped_mass > 0:
        logger.warning("Temperature undershoot clipped", extra={"clipped_mass": clipped_mass})

    residual = (mass * theta_new - stored) / dt - heat_flux_divergence(
        theta_new, conductivity(rho_new, theta_new, law)
    ) - sources
    logger.debug("Thermal step", extra={"picard_iterations": iteration, "min_theta": theta_new.min()})
    return ThermalStepReport(
        theta_new=theta_new,
        min_theta=theta_new.min(),
        balance_residual=lp_norm(residual, 2),
        clipped_mass=clipped_mass,
        integrated_residual=integrate(residual),
        picard_iterations=iteration,
    )


def renormalized_rate_terms(
    state: SystemState, h: HFunction, law: HeatLaw, params: RegularizationParams
) -> dict[str, float]:
    """Integrated right-hand side of the h-renormalized thermal balance at one state.

    d/dt ∫(ε+ρ)Q_h = heating − conduction − pressure + coupling − sink
    """
    theta, rho, u = state.theta, state.rho, state.u
    hz = ScalarField(theta.grid, h.h(theta.values))
    hp = ScalarField(theta.grid, h.h_prime(theta.values))
    grad_sq = gradient(theta).norm_squared()
    q = Q_h(theta, h)
    return {
        "heating": integrate(hz * viscous_heating(rho, u)),
        "conduction": integrate(conductivity(rho, theta, law) * hp * grad_sq),
        "pressure": integrate(hz * rho * theta * divergence(u)),
        "coupling": params.eps_for("coupling") * integrate(laplacian(rho) * (q - theta * hz)),
        "sink": params.eps_for("sink") * integrate((theta ** (law.alpha + 1.0)) * hz),
    }


def renormalized_storage(state: SystemState, h: HFunction, params: RegularizationParams) -> float:
    """∫(ε+ρ)Q_h(θ)."""
    return integrate((state.rho + params.eps_for("mass")) * Q_h(state.theta, h))


def renormalized_rate(terms: dict[str, float]) -> float:
    return terms["heating"] - terms["conduction"] - terms["pressure"] + terms["coupling"] - terms["sink"]


def renormalized_residual(
    before: SystemState,
    after: SystemState,
    h: HFunction,
    law: HeatLaw,
    params: RegularizationParams,
) -> float:
    """Signed residual of the h-renormalized thermal balance between two consecutive states.

    The time derivative is the forward difference; every other term is
    evaluated at ``before``, matching the explicit treatment in the step.
    """
    dt = after.t - before.t
    if dt <= 0:
        raise HistoryError("states must be in increasing time order")
    storage_rate = (renormalized_storage(after, h, params) - renormalized_storage(before, h, params)) / dt
    return storage_rate - renormalized_rate(renormalized_rate_terms(before, h, law, params))
