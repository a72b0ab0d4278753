"""The truncated log-energy functional ∫ρφ_n(v) and its time-integrated bound."""
import logging
import math
from dataclasses import dataclass
from typing import Callable, NamedTuple, Optional, Sequence

import numpy as np

from nsfg.core.errors import WeightFunctionError
from nsfg.cutoffs import PhiN, truncated_velocity
from nsfg.diagnostics.energy import energy, validate_history
from nsfg.fields import ScalarField, gradient, integrate
from nsfg.models import RegularizationParams, SystemState

logger = logging.getLogger(__name__)

DEFAULT_DELTA = 0.5
PASS_RTOL = 1e-6


@dataclass(frozen=True)
class WeightFunction:
    """Time weight ψ with its derivative; admissible when ψ ≥ 0 and ψ′ ≤ 0."""

    value: Callable[[float], float]
    derivative: Callable[[float], float]
    label: str = "custom"

    def scaled(self, factor: float) -> "WeightFunction":
        return WeightFunction(
            lambda t: factor * self.value(t), lambda t: factor * self.derivative(t), f"{factor:g}*{self.label}"
        )


def linear_decay(t_end: float) -> WeightFunction:
    """ψ(t) = max(1 − t/T, 0)."""
    if t_end <= 0:
        raise WeightFunctionError(f"final time must be positive, got {t_end}")
    return WeightFunction(
        lambda t: max(1.0 - t / t_end, 0.0),
        lambda t: -1.0 / t_end if t <= t_end else 0.0,
        "linear_decay",
    )


def validate_weight(psi: WeightFunction, times: Sequence[float]) -> None:
    for t in times:
        if psi.value(t) < 0:
            raise WeightFunctionError(f"weight is negative at t={t}")
        if psi.derivative(t) > 0:
            raise WeightFunctionError(f"weight increases at t={t}")


def _log_energy(rho: ScalarField, velocity: np.ndarray, phi: PhiN) -> float:
    """∫ρφ̃_n(|v|²) for a (dim, ...) velocity array."""
    speed_sq = np.sum(velocity**2, axis=0)
    return integrate(rho * phi.value(speed_sq))


def mv_functional(state: SystemState, n: float, m: float, K: float) -> float:
    """∫ρφ̃_n(|v|²) with v = φ_m(ρ)φ_K(ρ)u."""
    v = truncated_velocity(state.rho, state.u, m, K)
    return _log_energy(state.rho, v.as_array(), PhiN(n))


def mv_functional_untruncated(state: SystemState, n: float) -> float:
    """∫ρφ̃_n(|u|²), the form without density cut-offs."""
    return _log_energy(state.rho, state.u.as_array(), PhiN(n))


def mv_functional_bound(state: SystemState, n: float) -> float:
    """Plateau bound (e(1+n)² − 2n − 2)·∫ρ on either functional."""
    return PhiN(n).plateau * integrate(state.rho)


class MVCheck(NamedTuple):
    lhs: float
    rhs: float
    passed: bool


def mv_inequality_check(
    history: Sequence[SystemState],
    n: float,
    params: RegularizationParams,
    psi: Optional[WeightFunction] = None,
    *,
    delta: float = DEFAULT_DELTA,
    young_constant: float = 1.0,
) -> MVCheck:
    """Both sides of the time-integrated log-energy inequality over a run.

    lhs = −∫ψ′(t)∫ρφ_n(u) dt, by the trapezoidal rule over the history times.

    rhs = 8‖ψ‖∞(∫ρ₀|u₀|² + ∫|∇√ρ₀|² + r₀∫log₋ρ₀) + 2E₀ + ψ(0)∫ρ₀φ_n(u₀)
          + C‖ψ‖∞ ∫ ‖ρθ²‖_{2/(2−δ)} ‖1 + φ̃′_n(|u|²)‖_{2/δ} dt
    """
    validate_history(history)
    if not 0 < delta < 2:
        raise WeightFunctionError(f"delta must lie in (0, 2), got {delta}")
    times = np.array([s.t for s in history])
    if psi is None:
        psi = linear_decay(float(times[-1]))
    validate_weight(psi, times)

    phi = PhiN(n)
    functional = np.array([mv_functional_untruncated(s, n) for s in history])
    slopes = np.array([psi.derivative(float(t)) for t in times])
    lhs = -float(np.trapezoid(slopes * functional, times))
    psi_sup = max(abs(psi.value(float(t))) for t in times)

    first = history[0]
    rho0 = first.rho
    initial = integrate(rho0 * first.u.norm_squared())
    initial += integrate(gradient(rho0.apply(np.sqrt)).norm_squared())
    initial += params.r0 * integrate(rho0.apply(lambda r: np.maximum(-np.log(r), 0.0)))
    p, q = 2.0 / (2.0 - delta), 2.0 / delta

    def thermal_coupling(state: SystemState) -> float:
        heat = state.rho * state.theta * state.theta
        weight = 1.0 + phi.prime(state.u.norm_squared().values)
        heat_norm = integrate(heat**p) ** (1.0 / p)
        weight_norm = integrate(ScalarField(state.grid, weight**q)) ** (1.0 / q)
        return heat_norm * weight_norm

    coupling = float(np.trapezoid([thermal_coupling(s) for s in history], times))
    rhs = (
        8.0 * psi_sup * initial
        + 2.0 * energy(first, params).total
        + psi.value(float(times[0])) * functional[0]
        + young_constant * psi_sup * coupling
    )
    passed = lhs <= rhs * (1.0 + PASS_RTOL)
    if not passed:
        logger.warning("Log-energy inequality violated", extra={"lhs": lhs, "rhs": rhs, "n": n})
    return MVCheck(lhs, rhs, bool(passed))


def mv_monotone_in_n(state: SystemState, levels: Sequence[float]) -> float:
    """Worst decrease of mv_functional_untruncated along increasing n (≤ 0 expected)."""
    values = [mv_functional_untruncated(state, n) for n in sorted(levels)]
    if len(values) < 2:
        return -math.inf
    return float(max(a - b for a, b in zip(values, values[1:])))
