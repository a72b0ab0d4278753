import numpy as np
import pytest


def test_heat_law_rejects_small_alpha():
    """α below 2 is not admissible."""
    from nsfg.core.errors import HeatLawError
    from nsfg.thermal import HeatLaw

    with pytest.raises(HeatLawError):
        HeatLaw(alpha=1.5)


def test_conductivity_formula(grid1d):
    """κ = κ₀(1+θ^α)."""
    from nsfg.fields import ScalarField
    from nsfg.thermal import HeatLaw, conductivity

    theta = ScalarField.constant(grid1d, 2.0)
    rho = ScalarField.constant(grid1d, 1.0)
    kappa = conductivity(rho, theta, HeatLaw(alpha=2.0, kappa0=1.5, c1=0.5))
    np.testing.assert_allclose(kappa.values, 1.5 * 5.0)


@pytest.mark.parametrize("name", ["reciprocal", "power", "ratio", "unit"])
def test_h_families_are_admissible(name):
    """Every shipped h family passes validate_h."""
    from nsfg.thermal import H_FAMILIES, validate_h

    validate_h(H_FAMILIES[name]())


def test_validate_h_rejects_increasing_function():
    """h(z) = 1 + z fails the non-increasing condition."""
    from nsfg.core.errors import InvalidHFunctionError
    from nsfg.thermal import HFunction, validate_h

    bad = HFunction(
        h=lambda z: 1.0 + z,
        h_prime=lambda z: np.ones_like(z),
        h_double_prime=lambda z: np.zeros_like(z),
        label="increasing",
    )
    with pytest.raises(InvalidHFunctionError, match="non_increasing"):
        validate_h(bad)


def test_K_inverse_roundtrip(grid1d):
    """𝒦⁻¹(𝒦(θ)) = θ for the constant-κ₀ law."""
    from nsfg.fields import ScalarField
    from nsfg.thermal import HeatLaw, K_inverse, K_of

    law = HeatLaw(alpha=2.0, kappa0=1.2)
    theta = ScalarField.from_function(grid1d, lambda x: 1.0 + 0.5 * np.sin(x))
    np.testing.assert_allclose(K_inverse(K_of(theta, law), law).values, theta.values, rtol=1e-10)


def test_Q_h_reciprocal_is_log(grid1d):
    """Q_h(θ) = log(1+θ) for h = 1/(1+z)."""
    from nsfg.fields import ScalarField
    from nsfg.thermal import Q_h, reciprocal_h

    theta = ScalarField.constant(grid1d, 3.0)
    np.testing.assert_allclose(Q_h(theta, reciprocal_h()).values, np.log(4.0))


def test_negative_temperature_rejected(grid1d):
    """Thermal step refuses negative input."""
    from nsfg.core.errors import NegativeTemperatureError
    from nsfg.fields import ScalarField, VectorField
    from nsfg.thermal import HeatLaw, step_temperature

    theta = ScalarField.from_function(grid1d, lambda x: np.sin(x))
    rho = ScalarField.constant(grid1d, 1.0)
    with pytest.raises(NegativeTemperatureError):
        step_temperature(theta, rho, VectorField.zeros(grid1d), HeatLaw(), 0.1, 1e-3)


def test_uniform_temperature_follows_sink_ode(grid1d):
    """One step of uniform θ equals explicit Euler for (ε+1)θ' = -εθ^{α+1}."""
    from nsfg.fields import ScalarField, VectorField
    from nsfg.thermal import HeatLaw, step_temperature

    eps, dt = 0.1, 0.01
    theta = ScalarField.constant(grid1d, 1.0)
    rho = ScalarField.constant(grid1d, 1.0)
    report = step_temperature(theta, rho, VectorField.zeros(grid1d), HeatLaw(alpha=2.0), eps, dt)
    expected = 1.0 - dt * eps / (1.0 + eps)
    np.testing.assert_allclose(report.theta_new.values, expected, rtol=1e-12)
    assert report.clipped_mass == 0.0


def test_conduction_conserves_heat(grid1d):
    """Without sources ∫(ε+ρ)θ is unchanged and the bump spreads."""
    from nsfg.fields import ScalarField, VectorField, integrate
    from nsfg.thermal import HeatLaw, step_temperature

    theta = ScalarField.from_function(grid1d, lambda x: 1.0 + 0.5 * np.cos(x))
    rho = ScalarField.constant(grid1d, 1.0)
    report = step_temperature(theta, rho, VectorField.zeros(grid1d), HeatLaw(), 0.1, 1e-2, eps_sink=0.0)
    assert integrate(report.theta_new * 1.1) == pytest.approx(integrate(theta * 1.1), rel=1e-12)
    assert report.theta_new.max() < theta.max()
    assert abs(report.integrated_residual) < 1e-8


def test_renormalized_residual_vanishes_for_unit_h(make_state, quiet_params):
    """With h ≡ 1 the renormalized balance reproduces the thermal step to roundoff."""
    from nsfg.fields import integrate
    from nsfg.thermal import HeatLaw, renormalized_residual, step_temperature, unit_h

    x = np.linspace(0, 2 * np.pi, 32, endpoint=False)
    before = make_state(theta=1.0 + 0.3 * np.cos(x), u=0.1 * np.sin(x))
    law = HeatLaw.from_params(quiet_params)
    report = step_temperature(before.theta, before.rho, before.u, law, quiet_params.eps_for("mass"), 1e-3, eps_sink=0.0)
    after = before.advanced(before.rho, before.velocity, report.theta_new, 1e-3)
    residual = renormalized_residual(before, after, unit_h(), law, quiet_params)
    assert abs(residual) < 1e-8 * max(1.0, integrate(before.theta))


@pytest.mark.parametrize(
    ("alpha", "theta_value", "expected"),
    [(2.0, 1.0, 4.0 / 3.0), (3.0, 2.0, 6.0)],
)
def test_K_closed_form_values(grid1d, alpha, theta_value, expected):
    """𝒦(θ) = θ + θ^{α+1}/(α+1) for κ₀ = 1."""
    from nsfg.fields import ScalarField
    from nsfg.thermal import HeatLaw, K_of

    theta = ScalarField.constant(grid1d, theta_value)
    np.testing.assert_allclose(K_of(theta, HeatLaw(alpha=alpha, kappa0=1.0)).values, expected, rtol=1e-14)


def test_K_h_reciprocal_closed_form(grid1d):
    """𝒦_h(1) = ∫₀¹(1+z²)/(1+z) dz = 2 ln 2 − 1/2."""
    from nsfg.fields import ScalarField
    from nsfg.thermal import HeatLaw, K_h, reciprocal_h

    theta = ScalarField.constant(grid1d, 1.0)
    np.testing.assert_allclose(
        K_h(theta, reciprocal_h(), HeatLaw()).values, 2.0 * np.log(2.0) - 0.5, rtol=1e-10
    )


def test_viscous_heating_raises_total_heat():
    """Shear u = (sin y, 0) injects ∫2|D|² = 2π² per unit time."""
    from nsfg.fields import Grid, ScalarField, VectorField, integrate
    from nsfg.thermal import HeatLaw, step_temperature, viscous_heating

    grid = Grid(2, 16)
    x, y = grid.coordinates
    u = VectorField.from_arrays(grid, [np.sin(y), np.zeros_like(x)])
    rho = ScalarField.constant(grid, 1.0)
    theta = ScalarField.constant(grid, 1.0)
    assert viscous_heating(rho, u).min() >= 0.0

    dt = 1e-3
    report = step_temperature(theta, rho, u, HeatLaw(), 0.0, dt, eps_sink=0.0)
    gained = integrate(report.theta_new) - integrate(theta)
    assert gained == pytest.approx(dt * 2.0 * np.pi**2, rel=1e-10)


def test_renormalized_residual_is_first_order_in_dt(make_state, quiet_params):
    """Halving dt halves the reciprocal-h balance residual of pure conduction."""
    from nsfg.thermal import HeatLaw, reciprocal_h, renormalized_residual, step_temperature

    x = np.linspace(0, 2 * np.pi, 32, endpoint=False)
    before = make_state(theta=1.0 + 0.3 * np.cos(x))
    law = HeatLaw.from_params(quiet_params)
    residuals = []
    for dt in (1e-3, 5e-4):
        report = step_temperature(
            before.theta, before.rho, before.u, law, quiet_params.eps_for("mass"), dt, eps_sink=0.0
        )
        after = before.advanced(before.rho, before.velocity, report.theta_new, dt)
        residuals.append(renormalized_residual(before, after, reciprocal_h(), law, quiet_params))
    assert abs(residuals[0]) > 0.0
    assert residuals[1] / residuals[0] == pytest.approx(0.5, rel=0.1)
