"""Total energy, its dissipation integrals, and the discrete energy balance."""
from dataclasses import asdict, dataclass
from typing import Optional, Sequence

import numpy as np

from nsfg.core.errors import HistoryError
from nsfg.fields import ScalarField, dealias, divergence, inner, integrate, laplacian, laplacian_power, strain, tensor_contract
from nsfg.models import RegularizationParams, SystemState


@dataclass(frozen=True)
class EnergyBreakdown:
    kinetic: float
    cold: float
    capillary: float
    hyper: float
    internal: float

    @property
    def mechanical(self) -> float:
        return self.kinetic + self.cold + self.capillary + self.hyper

    @property
    def total(self) -> float:
        return self.mechanical + self.internal

    def as_dict(self) -> dict[str, float]:
        return {**asdict(self), "total": self.total}


def kinetic_energy(state: SystemState) -> float:
    return 0.5 * integrate(state.rho * state.u.norm_squared())


def cold_energy(rho: ScalarField, eps_cold: float) -> float:
    """ε/10 ∫ρ^{-10}."""
    return eps_cold / 10.0 * integrate(rho**-10.0) if eps_cold else 0.0


def capillary_energy(rho: ScalarField, kappa: float) -> float:
    """κ∫|∇√ρ|², evaluated as −κ⟨√ρ, Δ√ρ⟩."""
    if not kappa:
        return 0.0
    sqrt_rho = rho.apply(np.sqrt)
    return -kappa * inner(sqrt_rho, laplacian(sqrt_rho))


def hyper_energy(rho: ScalarField, eps_hyper: float) -> float:
    """ε/2 ∫|∇Δ⁴ρ̃|², evaluated as −ε/2 ⟨Δ⁴ρ̃, Δ⁵ρ̃⟩."""
    if not eps_hyper:
        return 0.0
    lap4 = laplacian_power(dealias(rho), 4)
    return -0.5 * eps_hyper * inner(lap4, laplacian(lap4))


def internal_energy(state: SystemState, eps_mass: float) -> float:
    """∫(ε+ρ)θ with C_v = 1."""
    return integrate((state.rho + eps_mass) * state.theta)


def energy(state: SystemState, params: RegularizationParams) -> EnergyBreakdown:
    return EnergyBreakdown(
        kinetic=kinetic_energy(state),
        cold=cold_energy(state.rho, params.eps_for("cold")),
        capillary=capillary_energy(state.rho, params.kappa_q),
        hyper=hyper_energy(state.rho, params.eps_for("hyper")),
        internal=internal_energy(state, params.eps_for("mass")),
    )


def energy_dissipation(state: SystemState, params: RegularizationParams) -> dict[str, float]:
    """Integrals D with dE/dt + ΣD = 0 along the semi-discrete flow.

    Continuum equivalents: cold = (11/25) ε_cold ε ∫|∇ρ^{-5}|²,
    capillary = ½ κ ε ∫ρ|∇² log ρ|², hyper = ε_hyper ε ∫|Δ⁵ρ̃|².
    ``cross_imbalance`` vanishes unless eps_cross is overridden away from ε.
    """
    rho, theta, u = state.rho, state.theta, state.u
    eps = params.eps
    eps_bi, eps_cold, eps_hyper = params.eps_for("bi"), params.eps_for("cold"), params.eps_for("hyper")
    eps_cross, eps_sink = params.eps_for("cross"), params.eps_for("sink")
    speed_sq = u.norm_squared()
    lap_rho = laplacian(rho)
    alpha = params.alpha

    terms = {
        "biharmonic": 0.0,
        "hyper": 0.0,
        "cold": 0.0,
        "capillary": 0.0,
        "drag0": params.r0 * integrate(speed_sq) if params.r0 else 0.0,
        "drag1": params.r1 * integrate(rho * speed_sq * speed_sq) if params.r1 else 0.0,
        "sink": eps_sink * integrate(theta ** (alpha + 1.0)) if eps_sink else 0.0,
        "cross_imbalance": 0.5 * (eps - eps_cross) * inner(lap_rho, speed_sq),
    }
    if eps_bi:
        coeffs = state.velocity.by_component()
        lap_u = coeffs @ state.basis.laplacians
        terms["biharmonic"] = eps_bi * float(np.sum(lap_u**2)) * state.grid.cell_volume
    if eps and eps_hyper:
        lap5 = laplacian_power(dealias(rho), 5)
        terms["hyper"] = eps_hyper * eps * inner(lap5, lap5)
    if eps and eps_cold:
        terms["cold"] = eps_cold * eps * inner(rho**-11.0, lap_rho)
    if eps and params.kappa_q:
        sqrt_rho = rho.apply(np.sqrt)
        terms["capillary"] = params.kappa_q * eps * inner(laplacian(sqrt_rho) / sqrt_rho, lap_rho)
    return terms


def viscous_dissipation(state: SystemState) -> float:
    """2∫ρ|D(u)|²; moves kinetic energy into heat."""
    d = strain(state.u)
    return 2.0 * integrate(state.rho * tensor_contract(d, d))


def pressure_work(state: SystemState) -> float:
    """∫ρθ div u; exchanges kinetic and internal energy."""
    return integrate(state.rho * state.theta * divergence(state.u))


def validate_history(history: Sequence[SystemState]) -> None:
    if len(history) < 2:
        raise HistoryError("need at least two states")
    first = history[0]
    for before, after in zip(history, history[1:]):
        if after.grid != first.grid or after.basis != first.basis:
            raise HistoryError("history mixes grids or bases")
        if after.t <= before.t:
            raise HistoryError("history times must increase strictly")


def resolve_index(history: Sequence[SystemState], index: Optional[int]) -> int:
    n = len(history)
    k = n // 2 if index is None else index
    if k < 0:
        k += n
    if not 0 <= k < n:
        raise HistoryError(f"index {index} outside a history of {n} states")
    return k


def energy_dissipation_residual(
    history: Sequence[SystemState], params: RegularizationParams, index: Optional[int] = None
) -> float:
    """dE/dt + ΣD at ``history[index]`` (default: the middle state); → 0 as dt → 0."""
    validate_history(history)
    k = resolve_index(history, index)
    lo, hi = max(k - 1, 0), min(k + 1, len(history) - 1)
    window = {i: energy(history[i], params).total for i in {lo, k, hi}}
    rate = (window[hi] - window[lo]) / (history[hi].t - history[lo].t)
    return rate + sum(energy_dissipation(history[k], params).values())


def energy_monotonicity(history: Sequence[SystemState], params: RegularizationParams) -> float:
    """max_k E(t_{k+1}) − E(t_k); nonpositive up to O(dt²) for dissipative runs."""
    validate_history(history)
    totals = np.array([energy(s, params).total for s in history])
    return float(np.max(np.diff(totals)))


def mechanical_dissipation(state: SystemState, params: RegularizationParams) -> float:
    terms = energy_dissipation(state, params)
    terms.pop("sink")
    return viscous_dissipation(state) + sum(terms.values())
