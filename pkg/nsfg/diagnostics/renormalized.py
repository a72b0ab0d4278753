"""Time-integrated renormalized thermal balance tested against a weight ψ(t)."""
from typing import NamedTuple, Optional, Sequence

import numpy as np

from nsfg.diagnostics.energy import validate_history
from nsfg.diagnostics.log_energy import WeightFunction, linear_decay, validate_weight
from nsfg.models import RegularizationParams, SystemState
from nsfg.thermal import HeatLaw, HFunction, renormalized_rate_terms, renormalized_storage, validate_h

DEFAULT_RTOL = 1e-2


class RenormalizedCheck(NamedTuple):
    lhs: float
    rhs: float
    passed: bool


def renormalized_inequality(
    history: Sequence[SystemState],
    h: HFunction,
    law: HeatLaw,
    params: RegularizationParams,
    psi: Optional[WeightFunction] = None,
    *,
    rtol: float = DEFAULT_RTOL,
) -> RenormalizedCheck:
    """With S(t) = ∫(ε+ρ)Q_h(θ) and ψ(T) = 0:

        lhs = −∫ψ′S dt + ∫ψ(conduction + sink) dt
        rhs = ψ(0)S(0) + ∫ψ(heating − pressure + coupling) dt

    The two agree for the semi-discrete flow; ``passed`` allows ``rtol`` of
    time-discretization error on the inequality lhs ≤ rhs.
    """
    validate_history(history)
    validate_h(h)
    times = np.array([s.t for s in history])
    if psi is None:
        psi = linear_decay(float(times[-1]))
    validate_weight(psi, times)

    storage = np.array([renormalized_storage(s, h, params) for s in history])
    weights = np.array([psi.value(float(t)) for t in times])
    slopes = np.array([psi.derivative(float(t)) for t in times])
    terms = [renormalized_rate_terms(s, h, law, params) for s in history]
    losses = np.array([tm["conduction"] + tm["sink"] for tm in terms])
    gains = np.array([tm["heating"] - tm["pressure"] + tm["coupling"] for tm in terms])

    lhs = float(-np.trapezoid(slopes * storage, times) + np.trapezoid(weights * losses, times))
    rhs = float(weights[0] * storage[0] + np.trapezoid(weights * gains, times))
    passed = lhs <= rhs + rtol * max(abs(rhs), 1.0)
    return RenormalizedCheck(lhs, rhs, bool(passed))
