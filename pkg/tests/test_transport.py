import math

import numpy as np
import pytest


def _smooth_velocity(grid):
    from nsfg.fields import VectorField

    x = grid.coordinates[0]
    return VectorField.from_arrays(grid, [0.5 * np.sin(x) + 0.2 * np.cos(2 * x)])


def test_mass_conserved_over_many_steps():
    """1000 IMEX steps keep ∫ρ to 1e-10 relative."""
    from nsfg.fields import Grid, ScalarField, integrate
    from nsfg.transport import step_density

    grid = Grid(1, 64)
    rho = ScalarField.from_function(grid, lambda x: 1.0 + 0.2 * np.cos(x))
    u = _smooth_velocity(grid)
    mass0 = integrate(rho)
    for _ in range(1000):
        rho = step_density(rho, u, 0.01, 1e-3).rho_new
    assert abs(integrate(rho) - mass0) / mass0 <= 1e-10


@pytest.mark.parametrize("scheme", ["imex", "strang"])
def test_heat_mode_decay(scheme):
    """With u = 0 the sine mode decays like e^{-εk²t}."""
    from nsfg.fields import Grid, ScalarField, VectorField
    from nsfg.transport import step_density

    grid = Grid(1, 32)
    eps, k, dt, steps = 0.05, 2, 1e-4, 200
    rho = ScalarField.from_function(grid, lambda x: 1.0 + 0.1 * np.sin(k * x))
    u = VectorField.zeros(grid)
    for _ in range(steps):
        rho = step_density(rho, u, eps, dt, scheme).rho_new
    exact = 1.0 + 0.1 * math.exp(-eps * k * k * dt * steps) * np.sin(k * grid.coordinates[0])
    assert np.max(np.abs(rho.values - exact)) <= 1e-6


def test_cfl_violation_names_advection(grid1d):
    """dt above 0.5h/‖u‖∞ raises StabilityError for advection."""
    from nsfg.core.errors import StabilityError
    from nsfg.fields import ScalarField
    from nsfg.transport import advective_dt_bound, step_density

    u = _smooth_velocity(grid1d)
    rho = ScalarField.constant(grid1d, 1.0)
    with pytest.raises(StabilityError) as info:
        step_density(rho, u, 0.0, 2 * advective_dt_bound(u))
    assert info.value.term == "advection"


def test_nonpositive_density_rejected(grid1d):
    """Initial density must be positive."""
    from nsfg.core.errors import DensityFloorError
    from nsfg.fields import ScalarField, VectorField
    from nsfg.transport import step_density

    rho = ScalarField.from_function(grid1d, lambda x: np.sin(x))
    with pytest.raises(DensityFloorError):
        step_density(rho, VectorField.zeros(grid1d), 0.1, 1e-3)


def test_envelope_check_holds_for_smooth_flow(grid1d):
    """One small step stays inside the transport envelope."""
    from nsfg.fields import ScalarField
    from nsfg.transport import step_density

    rho = ScalarField.from_function(grid1d, lambda x: 1.0 + 0.3 * np.cos(x))
    report = step_density(rho, _smooth_velocity(grid1d), 1e-3, 1e-3)
    assert report.bound_check
    assert report.min_rho > 0
    assert abs(report.mass_drift) < 1e-12


def test_density_rate_vanishes_at_rest(grid1d):
    """Uniform density at rest does not change."""
    from nsfg.fields import ScalarField, VectorField
    from nsfg.transport import density_rate

    rate = density_rate(ScalarField.constant(grid1d, 2.0), VectorField.zeros(grid1d), 0.1)
    np.testing.assert_allclose(rate.values, 0.0, atol=1e-14)


@pytest.mark.parametrize("scheme", ["imex", "strang"])
def test_constant_density_preserved_by_divergence_free_flow(scheme):
    """ρ ≡ c stays c under the shear u = (sin y, 0)."""
    from nsfg.fields import Grid, ScalarField, VectorField
    from nsfg.transport import step_density

    grid = Grid(2, 16)
    x, y = grid.coordinates
    rho = ScalarField.constant(grid, 1.7)
    u = VectorField.from_arrays(grid, [np.sin(y), np.zeros_like(x)])
    for _ in range(10):
        rho = step_density(rho, u, 0.05, 1e-2, scheme).rho_new
    np.testing.assert_allclose(rho.values, 1.7, atol=1e-12)


@pytest.mark.parametrize("scheme", ["imex", "strang"])
def test_single_step_compresses_like_minus_cos(grid1d, scheme):
    """ρ = 1, u = sin x, ε = 0: one step gives 1 − dt·cos x up to O(dt²)."""
    from nsfg.fields import ScalarField, VectorField
    from nsfg.transport import step_density

    dt = 1e-3
    x = grid1d.coordinates[0]
    rho = ScalarField.constant(grid1d, 1.0)
    u = VectorField.from_arrays(grid1d, [np.sin(x)])
    rho_new = step_density(rho, u, 0.0, dt, scheme).rho_new
    assert np.max(np.abs(rho_new.values - (1.0 - dt * np.cos(x)))) <= dt * dt
