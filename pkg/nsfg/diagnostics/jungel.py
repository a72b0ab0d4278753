"""Density-gradient inequalities behind the √ρ regularity estimate.

    ∫ρ|∇² log ρ|² ≥ (1/7)∫|∇²√ρ|²
    ∫ρ|∇² log ρ|² ≥ (1/8)∫|∇ρ^{1/4}|⁴

The integrands are nonlinear in ρ, so they are evaluated on the 3/2-padded
grid after spectral interpolation.
"""
from typing import NamedTuple

import numpy as np

from nsfg.core.errors import DensityFloorError
from nsfg.fields import ScalarField, derivative, gradient, integrate, refine
from nsfg.fields.ops import padded_points

RELATIVE_SLACK = 1e-12


class JungelResult(NamedTuple):
    lhs: float
    rhs1: float
    rhs2: float
    passed: bool


def _hessian_norm_squared(f: ScalarField) -> ScalarField:
    dim = f.grid.dim
    first = [derivative(f, i) for i in range(dim)]
    total = ScalarField.constant(f.grid, 0.0)
    for i in range(dim):
        for j in range(dim):
            entry = derivative(first[i], j)
            total = total + entry * entry
    return total


def jungel_check(rho: ScalarField) -> JungelResult:
    if rho.min() <= 0:
        raise DensityFloorError(f"nonpositive density (min {rho.min():.3e})")
    fine = refine(rho, padded_points(rho.grid))
    if fine.min() <= 0:
        raise DensityFloorError("density interpolant is nonpositive on the padded grid")
    lhs = integrate(fine * _hessian_norm_squared(fine.apply(np.log)))
    rhs1 = integrate(_hessian_norm_squared(fine.apply(np.sqrt))) / 7.0
    quarter_grad_sq = gradient(fine**0.25).norm_squared()
    rhs2 = integrate(quarter_grad_sq * quarter_grad_sq) / 8.0
    passed = lhs >= max(rhs1, rhs2) - RELATIVE_SLACK * abs(lhs)
    return JungelResult(lhs, rhs1, rhs2, bool(passed))


def random_positive_density(grid, rng: np.random.Generator, floor: float = 0.1, modes: int = 4) -> ScalarField:
    """Seeded random trigonometric polynomial rescaled to have minimum ``floor``."""
    values = np.zeros(grid.shape)
    for _ in range(modes):
        k = rng.integers(-modes, modes + 1, size=grid.dim)
        phase = rng.uniform(0.0, 2.0 * np.pi)
        amplitude = rng.normal()
        values = values + amplitude * np.cos(sum(k[a] * grid.coordinates[a] for a in range(grid.dim)) + phase)
    values = values - values.min()
    spread = values.max()
    scale = rng.uniform(0.5, 3.0) / spread if spread > 0 else 0.0
    return ScalarField(grid, floor + scale * values)
