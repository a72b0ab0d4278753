import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st


def test_phi_tilde_at_zero():
    """φ̃_n(0) = 0 for every n."""
    from nsfg.cutoffs import phi_tilde_n

    for n in (0.0, 0.5, 3.0, 50.0):
        assert phi_tilde_n(0.0, n) == 0.0


def test_plateau_at_n_zero():
    """n = 0 gives the plateau e - 2 beyond C₀ = e - 1."""
    from nsfg.cutoffs import phi_tilde_n

    assert phi_tilde_n(math.e - 1.0, 0.0) == pytest.approx(math.e - 2.0, rel=1e-14)
    assert phi_tilde_n(10.0, 0.0) == pytest.approx(math.e - 2.0, rel=1e-14)


def test_middle_branch_meets_plateau_for_n_one():
    """At y = 4e - 1 the middle branch equals 4e - 4."""
    from nsfg.cutoffs import PhiN

    phi = PhiN(1.0)
    _, middle, plateau = phi.value_branches(np.array([4 * math.e - 1.0]))
    assert middle[0] == pytest.approx(4 * math.e - 4.0, rel=1e-14)
    assert plateau[0] == pytest.approx(4 * math.e - 4.0, rel=1e-14)


@pytest.mark.parametrize("n", [0.5, 1.0, 5.0, 20.0])
def test_knot_continuity(n):
    """Value and first derivative agree across both knots."""
    from nsfg.cutoffs import PhiN

    phi = PhiN(n)
    for knot, (a, b) in ((n, (0, 1)), (phi.C_n, (1, 2))):
        values = phi.value_branches(np.array([knot]))
        primes = phi.prime_branches(np.array([knot]))
        assert abs(values[a][0] - values[b][0]) <= 1e-12 * max(1.0, abs(values[a][0]))
        assert abs(primes[a][0] - primes[b][0]) <= 1e-12 * max(1.0, abs(primes[a][0]))


def test_derivative_matches_finite_difference():
    """Centered differences of φ̃_n reproduce φ̃′_n away from knots."""
    from nsfg.cutoffs import PhiN

    phi = PhiN(3.0)
    y = np.array([0.5, 2.0, 10.0, 40.0, 200.0])
    step = 1e-5
    fd = (phi.value(y + step) - phi.value(y - step)) / (2 * step)
    np.testing.assert_allclose(fd, phi.prime(y), atol=1e-8)


@settings(max_examples=50, deadline=None)
@given(st.floats(min_value=0.0, max_value=1e4), st.floats(min_value=0.1, max_value=50.0))
def test_derivative_bounds(y, n):
    """0 <= φ̃′_n(y) <= 1 + ln(1+y)."""
    from nsfg.cutoffs import phi_tilde_n_prime

    prime = float(phi_tilde_n_prime(y, n))
    assert -1e-12 <= prime <= 1.0 + math.log1p(y) + 1e-12


@settings(max_examples=50, deadline=None)
@given(st.floats(min_value=0.0, max_value=500.0), st.floats(min_value=0.1, max_value=20.0), st.floats(min_value=0.0, max_value=20.0))
def test_monotone_in_n(y, n, extra):
    """φ̃_{n₁}(y) <= φ̃_{n₂}(y) for n₁ <= n₂."""
    from nsfg.cutoffs import phi_tilde_n

    assert phi_tilde_n(y, n) <= phi_tilde_n(y, n + extra) + 1e-9 * max(1.0, y)


def test_hessian_matches_finite_difference():
    """Analytic Hessian of φ_n agrees with differences of the gradient."""
    from nsfg.cutoffs import PhiN

    phi = PhiN(4.0)
    rng = np.random.default_rng(5)
    u = rng.normal(size=3)
    step = 1e-6
    fd = np.stack(
        [(phi.gradient(u + step * e) - phi.gradient(u - step * e)) / (2 * step) for e in np.eye(3)]
    )
    np.testing.assert_allclose(fd, phi.hessian(u), atol=1e-6)


def test_hessian_bound_on_samples():
    """‖φ″_n(u)‖ <= 6 + 2ln(1+n)."""
    from nsfg.cutoffs import PhiN

    rng = np.random.default_rng(9)
    for n in (0.5, 5.0, 20.0):
        phi = PhiN(n)
        u = rng.normal(size=(10_000, 2)) * math.sqrt(phi.C_n)
        norms = np.linalg.norm(phi.hessian(u), ord=2, axis=(-2, -1))
        assert norms.max() <= phi.hessian_bound + 1e-12


def test_gradient_vanishes_on_plateau():
    """|u|² >= C_n gives zero gradient."""
    from nsfg.cutoffs import PhiN, phi_n_prime_vec

    phi = PhiN(1.0)
    u = np.array([math.sqrt(phi.C_n) + 1.0, 0.0])
    np.testing.assert_array_equal(phi_n_prime_vec(u, 1.0), 0.0)
    np.testing.assert_array_equal(phi_n_prime_vec(np.zeros(2), 1.0), 0.0)


def test_negative_argument_rejected():
    """φ̃_n is undefined for y < 0."""
    from nsfg.core.errors import CutoffError
    from nsfg.cutoffs import phi_tilde_n

    with pytest.raises(CutoffError):
        phi_tilde_n(-1.0, 2.0)


def test_density_cutoff_values():
    """φ_m is 0 below 1/(16m) and 1 above 1/m; φ_K is 1 below K and 0 above 2K."""
    from nsfg.cutoffs import DensityCutoff

    lower, upper = DensityCutoff.lower(4.0), DensityCutoff.upper(3.0)
    np.testing.assert_array_equal(lower(np.array([0.01, 0.3, 5.0])), [0.0, 1.0, 1.0])
    np.testing.assert_array_equal(upper(np.array([0.5, 3.0, 6.5])), [1.0, 1.0, 0.0])


@pytest.mark.parametrize("threshold", [0.5, 2.0, 10.0])
def test_density_cutoff_slope_bounds(threshold):
    """|φ′_m| <= 2m and |φ′_K| <= 2/K, with sharp published constants on a dense sample."""
    from nsfg.cutoffs import DensityCutoff

    lower, upper = DensityCutoff.lower(threshold), DensityCutoff.upper(threshold)
    assert lower.derivative_bound == pytest.approx(2.0 * threshold, rel=1e-12)
    assert upper.derivative_bound <= 2.0 / threshold
    assert lower.rho_derivative_bound == pytest.approx(1.1528, abs=1e-3)
    assert upper.rho_derivative_bound == pytest.approx(2.8507, abs=1e-3)

    for cutoff in (lower, upper):
        start, stop = cutoff.ramp
        rho = np.linspace(0.5 * start, 1.5 * stop, 400_001)
        slope = np.abs(cutoff.derivative(rho))
        assert slope.max() <= cutoff.derivative_bound * (1 + 1e-12)
        assert slope.max() == pytest.approx(cutoff.derivative_bound, rel=1e-6)
        assert (rho * slope).max() <= cutoff.rho_derivative_bound * (1 + 1e-12)
        assert (rho * slope).max() == pytest.approx(cutoff.rho_derivative_bound, rel=1e-6)


def test_truncated_velocity(grid1d):
    """v = u inside [1/m, K] and v = 0 below 1/(16m)."""
    from nsfg.cutoffs import truncated_velocity
    from nsfg.fields import ScalarField, VectorField

    x = grid1d.coordinates[0]
    u = VectorField.from_arrays(grid1d, [np.sin(x)])
    same = truncated_velocity(ScalarField.constant(grid1d, 1.0), u, 2.0, 2.0)
    np.testing.assert_array_equal(same[0].values, u[0].values)
    gone = truncated_velocity(ScalarField.constant(grid1d, 1.0 / 64.0), u, 2.0, 2.0)
    np.testing.assert_array_equal(gone[0].values, 0.0)
