"""Discrete balance of the mechanical energy across one momentum step."""
from nsfg.core.errors import HistoryError
from nsfg.models import RegularizationParams, SystemState


def kinetic_energy_balance(before: SystemState, after: SystemState, params: RegularizationParams) -> float:
    """Residual of d/dt E_mech + D_mech − ∫ρθ div u between two consecutive states.

    E_mech is kinetic + cold + capillary + hyper energy. The rate terms are
    averaged over both ends, so the residual is O(dt²) for the Heun scheme.
    """
    from nsfg.diagnostics.energy import energy, mechanical_dissipation, pressure_work

    dt = after.t - before.t
    if dt <= 0:
        raise HistoryError("states must be in increasing time order")
    if after.grid != before.grid or after.basis != before.basis:
        raise HistoryError("states use different grids or bases")
    change = (energy(after, params).mechanical - energy(before, params).mechanical) / dt
    dissipation = 0.5 * (mechanical_dissipation(before, params) + mechanical_dissipation(after, params))
    work = 0.5 * (pressure_work(before) + pressure_work(after))
    return change + dissipation - work
