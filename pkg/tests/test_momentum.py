import math

import numpy as np
import pytest


def test_constant_density_mass_is_scaled_identity(basis1d, grid1d):
    """M[c] = c·I."""
    from nsfg.fields import ScalarField
    from nsfg.momentum import assemble_mass

    mass = assemble_mass(ScalarField.constant(grid1d, 2.5), basis1d)
    np.testing.assert_allclose(mass.matrix, 2.5 * np.eye(basis1d.size), atol=1e-12)


def test_mass_inverse_norm_bounded_by_min_density(basis1d, grid1d):
    """‖M⁻¹‖ <= 1/min ρ for random positive densities."""
    from nsfg.diagnostics import random_positive_density
    from nsfg.momentum import assemble_mass

    rng = np.random.default_rng(11)
    for _ in range(20):
        rho = random_positive_density(grid1d, rng, floor=0.2)
        assert assemble_mass(rho, basis1d).inverse_norm <= (1.0 / rho.min()) * (1.0 + 1e-8)


def test_drag_power_is_dissipative(make_state):
    """λ·F_drag0 = -r₀∫|u|²."""
    from nsfg.diagnostics.energy import energy_dissipation
    from nsfg.models import EpsOverrides, RegularizationParams
    from nsfg.momentum import assemble_forces

    x = np.linspace(0, 2 * np.pi, 32, endpoint=False)
    state = make_state(u=0.3 + 0.2 * np.sin(x))
    params = RegularizationParams(eps=0.0, r0=0.4, overrides=EpsOverrides(eps_hyper=0.0))
    power = assemble_forces(state, params).power(state.velocity.lam)
    assert power["drag0"] == pytest.approx(-energy_dissipation(state, params)["drag0"], rel=1e-12)
    assert power["drag0"] < 0


def test_viscous_power_is_nonpositive(make_state, quiet_params):
    """Viscous work never adds kinetic energy."""
    from nsfg.momentum import assemble_forces

    x = np.linspace(0, 2 * np.pi, 32, endpoint=False)
    state = make_state(rho=1.0 + 0.2 * np.cos(x), u=np.sin(2 * x))
    power = assemble_forces(state, quiet_params).power(state.velocity.lam)
    assert power["viscous"] <= 1e-14


def test_capillary_pair_matches_bohm_form(make_state):
    """Weak pair form equals κρ∇(Δ√ρ/√ρ) tested against the basis."""
    from nsfg.models import EpsOverrides, RegularizationParams
    from nsfg.momentum import assemble_forces, capillary_strong_form

    x = np.linspace(0, 2 * np.pi, 32, endpoint=False)
    state = make_state(rho=1.0 + 0.2 * np.cos(x))
    params = RegularizationParams(eps=0.0, kappa_q=0.5, overrides=EpsOverrides(eps_hyper=0.0))
    weak = assemble_forces(state, params)["capillary"]
    strong = capillary_strong_form(state.rho, state.basis, 0.5)
    np.testing.assert_allclose(weak, strong, atol=1e-6)


def test_drag_only_decay_matches_exponential(make_state):
    """Pure drag with ρ ≡ 1 gives kinetic energy e^{-2r₀t} within 1% over [0, 2/r₀]."""
    from nsfg.diagnostics.energy import kinetic_energy
    from nsfg.models import EpsOverrides, RegularizationParams
    from nsfg.momentum import step_velocity

    r0, dt = 1.0, 0.01
    params = RegularizationParams(eps=0.0, r0=r0, overrides=EpsOverrides(eps_hyper=0.0))
    state = make_state(u=np.full(32, 0.5))
    k0 = kinetic_energy(state)
    steps = int(round(2.0 / r0 / dt))
    for _ in range(steps):
        velocity = step_velocity(state, params, dt, rho_next=state.rho)
        state = state.advanced(state.rho, velocity, state.theta, dt)
    assert kinetic_energy(state) == pytest.approx(k0 * math.exp(-2 * r0 * state.t), rel=1e-2)


def test_picard_scheme_converges(make_state, quiet_params):
    """Implicit Euler agrees with Heun to first order for a small step."""
    from nsfg.momentum import step_velocity

    x = np.linspace(0, 2 * np.pi, 32, endpoint=False)
    state = make_state(rho=1.0 + 0.1 * np.cos(x), u=0.1 * np.sin(x))
    heun = step_velocity(state, quiet_params, 1e-4, rho_next=state.rho)
    picard = step_velocity(state, quiet_params, 1e-4, rho_next=state.rho, scheme="picard")
    assert np.max(np.abs(heun.lam - picard.lam)) < 1e-5


def test_stability_scan_names_term(make_state):
    """A large dt with stiff hyperviscosity fails on the hyper term."""
    from nsfg.core.errors import StabilityError
    from nsfg.models import RegularizationParams
    from nsfg.momentum import check_stability

    state = make_state()
    params = RegularizationParams(eps=1e-3)
    with pytest.raises(StabilityError) as info:
        check_stability(state, params, 1e-2)
    assert info.value.term == "hyper"


def test_equilibrium_has_no_force(make_state, quiet_params):
    """ρ ≡ 1, u = 0, θ ≡ 1 is a steady state."""
    from nsfg.momentum import assemble_forces

    np.testing.assert_allclose(assemble_forces(make_state(), quiet_params).total, 0.0, atol=1e-13)


def test_kinetic_energy_balance_shrinks_with_dt(make_state, quiet_params):
    """The mechanical energy balance residual shrinks at least linearly as dt halves."""
    from nsfg.momentum import kinetic_energy_balance, step_velocity
    from nsfg.transport import step_density

    x = np.linspace(0, 2 * np.pi, 32, endpoint=False)
    before = make_state(rho=1.0 + 0.1 * np.cos(x), u=0.2 * np.sin(x))
    residuals = []
    for dt in (1e-4, 5e-5):
        rho_next = step_density(before.rho, before.u, quiet_params.eps, dt).rho_new
        velocity = step_velocity(before, quiet_params, dt, rho_next=rho_next)
        after = before.advanced(rho_next, velocity, before.theta, dt)
        residuals.append(abs(kinetic_energy_balance(before, after, quiet_params)))
    assert residuals[0] < 1e-3
    assert residuals[1] <= 0.6 * residuals[0] + 1e-12


def test_pressure_is_the_only_term_for_temperature_wave(make_state, quiet_params):
    """ρ ≡ 1, θ = 1 + 0.1 sin x, u = 0: the cos x coefficient is -0.1√π."""
    from nsfg.momentum import FORCE_TERMS, assemble_forces

    x = np.linspace(0, 2 * np.pi, 32, endpoint=False)
    state = make_state(theta=1.0 + 0.1 * np.sin(x))
    forces = assemble_forces(state, quiet_params)
    for name in FORCE_TERMS:
        if name != "pressure":
            np.testing.assert_allclose(forces[name], 0.0, atol=1e-12)
    cos_index = state.basis.mode_list.index(((1,), "cos"))
    assert forces["pressure"][cos_index] == pytest.approx(-0.1 * math.sqrt(math.pi), rel=1e-12)


def test_linear_drag_is_minus_identity(make_state):
    """r₀ = 1 with ρ ≡ 1 gives drag0 = -λ."""
    from nsfg.models import EpsOverrides, RegularizationParams
    from nsfg.momentum import assemble_forces

    x = np.linspace(0, 2 * np.pi, 32, endpoint=False)
    state = make_state(u=np.cos(x) / math.sqrt(math.pi))
    params = RegularizationParams(eps=0.0, r0=1.0, overrides=EpsOverrides(eps_hyper=0.0))
    np.testing.assert_allclose(assemble_forces(state, params)["drag0"], -state.velocity.lam, atol=1e-13)


def test_strong_forces_project_onto_weak_forces(make_state):
    """Projecting the pointwise momentum right-hand side onto X_N gives the assembled weak forces."""
    from nsfg.basis import project
    from nsfg.models import EpsOverrides, RegularizationParams
    from nsfg.momentum import assemble_forces, strong_forces

    x = np.linspace(0, 2 * np.pi, 32, endpoint=False)
    state = make_state(
        rho=1.0 + 0.1 * np.cos(x), u=0.2 * np.sin(x) + 0.1 * np.cos(2 * x), theta=1.0 + 0.1 * np.sin(x)
    )
    params = RegularizationParams(eps=1e-2, kappa_q=0.05, r0=0.3, r1=0.2, overrides=EpsOverrides(eps_hyper=1e-12))
    weak = assemble_forces(state, params).total
    projected = project(strong_forces(state, params), state.basis).lam
    np.testing.assert_allclose(projected, weak, atol=1e-10 * max(1.0, np.abs(weak).max()))
