"""BD entropy: the functional, its exact rate and the identity residual.

The effective velocity is w = u + ∇ρ/ρ. The functional is

    B = ½∫ρ|w|² + E_cold + E_capillary + E_hyper − r₀∫log ρ

with the energy terms shared with the total energy.
"""
import logging
import math
from typing import Optional, Sequence

import numpy as np

from nsfg.core.errors import HistoryError
from nsfg.diagnostics.energy import (
    capillary_energy,
    cold_energy,
    hyper_energy,
    resolve_index,
    validate_history,
)
from nsfg.fields import (
    ScalarField,
    VectorField,
    dealias,
    derivative,
    divergence,
    gradient,
    inner,
    integrate,
    jacobian,
    laplacian,
    laplacian_power,
)
from nsfg.models import RegularizationParams, SystemState
from nsfg.momentum import strong_forces, velocity_rate_field
from nsfg.transport import check_density, density_rate

logger = logging.getLogger(__name__)


def effective_velocity(state: SystemState) -> VectorField:
    """u + ∇ρ/ρ."""
    return state.u + gradient(state.rho) * (1.0 / state.rho)


def bd_entropy(state: SystemState, params: RegularizationParams) -> float:
    check_density(state.rho)
    rho = state.rho
    value = 0.5 * integrate(rho * effective_velocity(state).norm_squared())
    value += cold_energy(rho, params.eps_for("cold"))
    value += capillary_energy(rho, params.kappa_q)
    value += hyper_energy(rho, params.eps_for("hyper"))
    if params.r0:
        value -= params.r0 * integrate(rho.apply(np.log))
    return value


def bd_rate(state: SystemState, params: RegularizationParams) -> float:
    """d/dt bd_entropy along ρ_t = density_rate and λ_t = galerkin_rate, by the chain rule."""
    check_density(state.rho)
    rho = state.rho
    rho_t = density_rate(rho, state.u, params.eps)
    u_t = velocity_rate_field(state, params, rho_t)
    w = effective_velocity(state)
    inv = 1.0 / rho
    w_t = u_t + gradient(rho_t) * inv - gradient(rho) * (rho_t * inv * inv)
    rate = 0.5 * inner(rho_t, w.norm_squared()) + inner(rho, w.dot(w_t))

    eps_cold, eps_hyper = params.eps_for("cold"), params.eps_for("hyper")
    if eps_cold:
        rate -= eps_cold * inner(rho**-11.0, rho_t)
    if params.kappa_q:
        sqrt_rho = rho.apply(np.sqrt)
        rate -= params.kappa_q * inner(laplacian(sqrt_rho) / sqrt_rho, rho_t)
    if eps_hyper:
        rate -= eps_hyper * inner(laplacian_power(dealias(rho), 9), rho_t)
    if params.r0:
        rate -= params.r0 * integrate(rho_t * inv)
    return rate


def galerkin_gap(state: SystemState, params: RegularizationParams) -> float:
    """∫w·(ρu_t + ρ_t u − F) with u_t the Galerkin rate and F the pointwise momentum forces.

    Zero when the momentum equation holds pointwise. It is the part of the BD
    rate carried by modes outside X_N and shrinks as N grows.
    """
    rho, u = state.rho, state.u
    rho_t = density_rate(rho, u, params.eps)
    u_t = velocity_rate_field(state, params, rho_t)
    defect = u_t * rho + u * rho_t - strong_forces(state, params)
    return integrate(effective_velocity(state).dot(defect))


def _hessian_log(rho: ScalarField) -> tuple[tuple[ScalarField, ...], ...]:
    log_rho = rho.apply(np.log)
    first = [derivative(log_rho, i) for i in range(rho.grid.dim)]
    return tuple(tuple(derivative(first[i], j) for j in range(rho.grid.dim)) for i in range(rho.grid.dim))


def bd_terms(state: SystemState, params: RegularizationParams) -> dict[str, float]:
    """BD identity terms on a discrete state, with L = log ρ and w = u + ∇L.

    The identity reads dB/dt + Σ diss_* = Σ R_i. ``R1``..``R8`` follow the
    classical right-hand integrals, specialised to this model:

      R1  −ε_cross∫(∇ρ·∇)u·∇L + ½(ε_cross − ε)∫Δρ|u|²
      R2  ½ε∫Δρ|∇L|²
      R3  −ε∫div(ρu)Δρ/ρ
      R4  −ε_bi∫Δu·∇ΔL
      R5  −εr₀∫|∇L|²                  (drag against the −r₀∫log ρ term)
      R6  −r₁∫|u|²u·∇ρ
      R7  ∫ρθ div u
      R8  −∫∇θ·∇ρ
      R9  −∫ρ ∂_j u_i (∂_i u_j + ∂_i∂_j L)   (the full 2ρD(u) stress against w)

    The potential dissipations carry (1 + ε) because both the momentum test
    and the ε-diffusion of ρ act on them. ``galerkin_gap`` is reported
    separately and ``closure_defect`` is bd_rate − galerkin_gap + Σdiss − ΣR,
    which vanishes up to quadrature error.
    """
    check_density(state.rho)
    rho, theta, u = state.rho, state.theta, state.u
    dim = state.grid.dim
    eps = params.eps
    eps_bi, eps_cold = params.eps_for("bi"), params.eps_for("cold")
    eps_cross, eps_hyper = params.eps_for("cross"), params.eps_for("hyper")
    inv = 1.0 / rho
    grad_rho = gradient(rho)
    grad_log = grad_rho * inv
    jac = jacobian(u)  # jac[c][j] = ∂_j u_c
    hess = _hessian_log(rho)
    lap_rho = laplacian(rho)
    div_u = divergence(u)
    speed_sq = u.norm_squared()
    log_speed_sq = grad_log.norm_squared()
    lap_u = VectorField(laplacian(component) for component in u)

    advected = sum(
        integrate(grad_rho[j] * jac[c][j] * grad_log[c]) for j in range(dim) for c in range(dim)
    )
    stress = sum(
        integrate(rho * jac[i][j] * (jac[j][i] + hess[i][j])) for i in range(dim) for j in range(dim)
    )
    terms = {
        "R1": -eps_cross * advected + 0.5 * (eps_cross - eps) * integrate(lap_rho * speed_sq),
        "R2": 0.5 * eps * integrate(lap_rho * log_speed_sq),
        "R3": -eps * integrate(divergence(u * rho) * lap_rho * inv),
        "R4": -eps_bi * integrate(lap_u.dot(gradient(laplacian(rho.apply(np.log))))),
        "R5": -eps * params.r0 * integrate(log_speed_sq),
        "R6": -params.r1 * integrate(speed_sq * u.dot(grad_rho)),
        "R7": integrate(rho * theta * div_u),
        "R8": -integrate(gradient(theta).dot(grad_rho)),
        "R9": -stress,
    }

    hess_sq = sum(hess[i][j] * hess[i][j] for i in range(dim) for j in range(dim))
    rotation = sum(
        (jac[c][j] - jac[j][c]) * (jac[c][j] - jac[j][c]) for c in range(dim) for j in range(dim)
    )
    lap5 = laplacian_power(dealias(rho), 5)
    diss = {
        "diss_cold": (1.0 + eps) * 11.0 / 25.0 * eps_cold * integrate(gradient(rho**-5.0).norm_squared()),
        "diss_capillary": (1.0 + eps) * 0.5 * params.kappa_q * integrate(rho * hess_sq),
        "diss_hyper": (1.0 + eps) * eps_hyper * inner(lap5, lap5),
        "diss_rotation": 0.5 * integrate(rho * rotation),
        "diss_density": eps * integrate(lap_rho * lap_rho * inv),
        "diss_thermal": integrate(grad_rho.norm_squared() * theta * inv),
        "diss_biharmonic": eps_bi * sum(inner(component, component) for component in lap_u),
        "diss_drag0": params.r0 * integrate(speed_sq),
        "diss_drag1": params.r1 * integrate(rho * speed_sq * speed_sq),
    }
    gap = galerkin_gap(state, params)
    defect = bd_rate(state, params) - gap + sum(diss.values()) - sum(terms.values())
    return {**terms, **diss, "galerkin_gap": gap, "closure_defect": defect}


def _entropy_slope(
    history: Sequence[SystemState], params: RegularizationParams, index: Optional[int]
) -> tuple[int, float]:
    validate_history(history)
    k = resolve_index(history, index)
    lo, hi = max(k - 1, 0), min(k + 1, len(history) - 1)
    slope = (bd_entropy(history[hi], params) - bd_entropy(history[lo], params)) / (history[hi].t - history[lo].t)
    return k, slope


def bd_identity_residual(
    history: Sequence[SystemState], params: RegularizationParams, index: Optional[int] = None
) -> float:
    """d/dt bd_entropy by finite differences, plus Σdiss, minus ΣR and the Galerkin gap.

    All terms except the difference quotient are evaluated at ``history[index]``.
    The quotient is centered inside the history and one-sided at its ends; the
    default index is the middle state.
    """
    if params.eps <= 0:
        raise HistoryError("the BD identity needs the eps-regularized continuity equation (eps > 0)")
    k, slope = _entropy_slope(history, params, index)
    terms = bd_terms(history[k], params)
    dissipation = sum(value for name, value in terms.items() if name.startswith("diss_"))
    sources = sum(value for name, value in terms.items() if name.startswith("R"))
    return slope + dissipation - sources - terms["galerkin_gap"]


def bd_rate_consistency(
    history: Sequence[SystemState], params: RegularizationParams, index: Optional[int] = None
) -> float:
    """Finite-difference d/dt of bd_entropy minus bd_rate at ``history[index]``."""
    k, slope = _entropy_slope(history, params, index)
    return slope - bd_rate(history[k], params)


def r7_bound(state: SystemState, params: RegularizationParams) -> tuple[float, float]:
    """(|R7|, ε∫ρ|div u|² + ∫ρθ²/(4ε)); the second entry bounds the first by Young's inequality."""
    eps = params.eps
    if eps <= 0:
        raise HistoryError("the R7 bound needs eps > 0")
    rho, theta = state.rho, state.theta
    div_u = divergence(state.u)
    r7 = abs(integrate(rho * theta * div_u))
    bound = eps * integrate(rho * div_u * div_u) + integrate(rho * theta * theta) / (4.0 * eps)
    if not math.isfinite(bound):
        logger.warning("Non-finite R7 bound", extra={"eps": eps})
    return r7, bound
