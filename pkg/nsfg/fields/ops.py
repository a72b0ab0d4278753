"""Spectral calculus and quadrature on periodic fields.

Derivatives are exact for band-limited samples: a field is transformed with a
real-to-complex FFT, multiplied by the Fourier symbol and transformed back.
Odd-order symbols vanish on the Nyquist mode so that results stay real.
"""
import math
from functools import lru_cache

import numpy as np
import scipy.fft

from nsfg.config import settings
from nsfg.core.errors import FieldError, GridError
from nsfg.fields.field import ScalarField, VectorField
from nsfg.fields.grid import Grid

MAX_LAPLACIAN_POWER = 9

Tensor = tuple[tuple[ScalarField, ...], ...]


def forward(f: ScalarField) -> np.ndarray:
    """Unnormalized rfftn of the samples."""
    return scipy.fft.rfftn(f.values, workers=settings.fft_workers)


def inverse(grid: Grid, spectrum: np.ndarray) -> ScalarField:
    values = scipy.fft.irfftn(spectrum, s=grid.shape, workers=settings.fft_workers)
    return ScalarField(grid, values)


def apply_symbol(f: ScalarField, symbol: np.ndarray) -> ScalarField:
    """Multiply the spectrum of ``f`` by ``symbol`` and transform back."""
    return inverse(f.grid, forward(f) * symbol)


@lru_cache(maxsize=256)
def derivative_symbol(grid: Grid, axis: int, order: int) -> np.ndarray:
    if not 0 <= axis < grid.dim:
        raise FieldError(f"axis {axis} out of range for a {grid.dim}-dimensional grid")
    if order < 1:
        raise FieldError(f"derivative order must be >= 1, got {order}")
    symbol = (1j * grid.wavenumbers[axis]) ** order
    symbol = np.broadcast_to(symbol, grid.spectral_shape).copy()
    if order % 2:
        symbol[grid.nyquist_mask(axis)] = 0.0
    symbol.flags.writeable = False
    return symbol


def derivative(f: ScalarField, axis: int, order: int = 1) -> ScalarField:
    """Spectral partial derivative of ``order`` along ``axis``."""
    return apply_symbol(f, derivative_symbol(f.grid, axis, order))


def laplacian_power(f: ScalarField, p: int = 1) -> ScalarField:
    """Δ^p f through the multiplier (-|k|²)^p, 1 <= p <= 9."""
    if not 1 <= p <= MAX_LAPLACIAN_POWER:
        raise FieldError(f"laplacian power must lie in [1, {MAX_LAPLACIAN_POWER}], got {p}")
    return apply_symbol(f, _laplacian_symbol(f.grid, p))


def laplacian(f: ScalarField) -> ScalarField:
    return laplacian_power(f, 1)


def gradient(f: ScalarField) -> VectorField:
    return VectorField(derivative(f, axis, 1) for axis in range(f.grid.dim))


def divergence(v: VectorField) -> ScalarField:
    grid = v.grid
    spectrum = np.zeros(grid.spectral_shape, dtype=complex)
    for axis, component in enumerate(v):
        spectrum += forward(component) * derivative_symbol(grid, axis, 1)
    return inverse(grid, spectrum)


def jacobian(v: VectorField) -> Tensor:
    """J[i][j] = ∂_j v_i."""
    return tuple(
        tuple(derivative(component, j, 1) for j in range(v.grid.dim)) for component in v
    )


def strain(v: VectorField) -> Tensor:
    """Symmetric part D(v) = ½(∇v + ∇vᵀ)."""
    jac = jacobian(v)
    d = v.grid.dim
    return tuple(tuple((jac[i][j] + jac[j][i]) * 0.5 for j in range(d)) for i in range(d))


def tensor_contract(a: Tensor, b: Tensor) -> ScalarField:
    """Pointwise a:b."""
    total = a[0][0] * b[0][0]
    for i, row in enumerate(a):
        for j, entry in enumerate(row):
            if i or j:
                total = total + entry * b[i][j]
    return total


def dealias(f: ScalarField) -> ScalarField:
    """2/3-rule projection."""
    return inverse(f.grid, np.where(f.grid.dealias_mask, forward(f), 0.0))


def dealias_vector(v: VectorField) -> VectorField:
    return VectorField(dealias(c) for c in v)


def refine(f: ScalarField, points_per_axis: int) -> ScalarField:
    """Spectral interpolation onto a finer grid.

    The coarse Nyquist mode is dropped; it carries no resolved information
    for the smooth fields this is used on.
    """
    grid = f.grid
    n = grid.points_per_axis
    if points_per_axis < n or points_per_axis % 2:
        raise GridError(f"cannot refine {n} points to {points_per_axis}")
    fine = grid.refined(points_per_axis)
    half = n // 2
    coarse_idx, fine_idx = [], []
    for axis in range(grid.dim):
        if axis == grid.dim - 1:
            coarse_idx.append(np.arange(half))
            fine_idx.append(np.arange(half))
        else:
            coarse_idx.append(np.concatenate([np.arange(half), np.arange(half + 1, n)]))
            fine_idx.append(
                np.concatenate([np.arange(half), np.arange(points_per_axis - half + 1, points_per_axis)])
            )
    spectrum = np.zeros(fine.spectral_shape, dtype=complex)
    scale = (points_per_axis / n) ** grid.dim
    spectrum[np.ix_(*fine_idx)] = forward(f)[np.ix_(*coarse_idx)] * scale
    return inverse(fine, spectrum)


def padded_points(grid: Grid) -> int:
    """Point count of the 3/2-rule quadrature grid, rounded up to even."""
    m = math.ceil(1.5 * grid.points_per_axis)
    return m + (m % 2)


def integrate(f: ScalarField) -> float:
    """Periodic trapezoidal rule; exact for band-limited integrands."""
    return float(f.values.sum() * f.grid.cell_volume)


def inner(f: ScalarField, g: ScalarField) -> float:
    if f.grid != g.grid:
        raise GridError("grid mismatch between fields")
    return float(np.vdot(f.values, g.values) * f.grid.cell_volume)


def lp_norm(f: ScalarField, p: float | str = 2) -> float:
    """Quadrature L^p norm for p in {1, 2, 4, inf}."""
    if p in ("inf", math.inf):
        return float(np.abs(f.values).max())
    if p not in (1, 2, 4):
        raise FieldError(f"unsupported norm exponent {p!r}")
    return float((np.sum(np.abs(f.values) ** p) * f.grid.cell_volume) ** (1.0 / p))


def spectral_coefficients(f: ScalarField) -> np.ndarray:
    """Normalized Fourier coefficients c_k on the half spectrum, f = Σ c_k e^{ik·x}."""
    return forward(f) / f.grid.size


def spectral_norm_squared(f: ScalarField) -> float:
    """volume · Σ|c_k|² over the full spectrum."""
    coeffs = spectral_coefficients(f)
    return float(f.grid.volume * np.sum(f.grid.half_spectrum_weights * np.abs(coeffs) ** 2))


@lru_cache(maxsize=64)
def _laplacian_symbol(grid: Grid, p: int) -> np.ndarray:
    symbol = (-grid.k_squared) ** p
    symbol.flags.writeable = False
    return symbol
