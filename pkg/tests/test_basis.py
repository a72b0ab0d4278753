import numpy as np
import pytest


def test_basis_is_orthonormal_under_grid_quadrature(basis1d):
    """Φ Φᵀ h = I for the scalar modes."""
    gram = basis1d.values @ basis1d.values.T * basis1d.grid.cell_volume
    np.testing.assert_allclose(gram, np.eye(basis1d.N), atol=1e-12)


def test_basis_mode_order(basis1d):
    """Constant first, then cos before sin at each wavenumber."""
    assert basis1d.mode_list[:5] == (((0,), "const"), ((1,), "cos"), ((1,), "sin"), ((2,), "cos"), ((2,), "sin"))
    assert basis1d.max_mode_index == 4


def test_basis_rejects_too_many_modes(grid1d):
    """N above the resolvable count raises BasisError."""
    from nsfg.basis import build_basis
    from nsfg.core.errors import BasisError

    with pytest.raises(BasisError):
        build_basis(grid1d, 40)


def test_project_reconstruct_roundtrip_for_basis_field(grid1d, basis1d):
    """A field inside X_N is reproduced by project then reconstruct."""
    from nsfg.basis import project, reconstruct
    from nsfg.fields import VectorField

    x = grid1d.coordinates[0]
    u = VectorField.from_arrays(grid1d, [0.3 + np.sin(x) - 0.2 * np.cos(3 * x)])
    np.testing.assert_allclose(reconstruct(project(u, basis1d))[0].values, u[0].values, atol=1e-12)


def test_gradient_tables_match_spectral_derivative(basis1d):
    """Analytic mode gradients agree with the FFT derivative."""
    from nsfg.basis import scalar_mode_field
    from nsfg.fields import derivative

    for i in range(basis1d.N):
        spectral = derivative(scalar_mode_field(basis1d, i), 0).values.ravel()
        np.testing.assert_allclose(basis1d.gradients[0, i], spectral, atol=1e-11)


def test_sup_norm_constant_bounds_velocity(basis1d):
    """‖u‖∞ <= C(N)·max|λ|."""
    from nsfg.basis import GalerkinVelocity, sup_norm_constant

    rng = np.random.default_rng(3)
    lam = rng.normal(size=basis1d.size)
    velocity = GalerkinVelocity(basis1d, lam)
    assert velocity.field.sup_norm() <= sup_norm_constant(basis1d) * np.abs(lam).max() + 1e-12


def test_velocity_rejects_wrong_length(basis1d):
    """Coefficient count must be N·dim."""
    from nsfg.basis import GalerkinVelocity
    from nsfg.core.errors import BasisError

    with pytest.raises(BasisError):
        GalerkinVelocity(basis1d, np.zeros(3))


def test_two_dimensional_basis_counts():
    """In 2D the vector basis has N·2 functions."""
    from nsfg.basis import build_basis
    from nsfg.fields import Grid

    basis = build_basis(Grid(2, 16), 5)
    assert basis.size == 10
    assert basis.values.shape == (5, 256)
