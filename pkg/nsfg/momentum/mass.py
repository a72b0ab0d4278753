"""The density-weighted mass operator ⟨M[ρ]u, w⟩ = ∫ρ u·w on X_N."""
from dataclasses import dataclass
from functools import cached_property

import numpy as np
from scipy.linalg import LinAlgError, cho_factor, cho_solve

from nsfg.basis import GalerkinBasis
from nsfg.core.errors import GridError, MassOperatorError
from nsfg.fields import ScalarField


def weighted_gram(weight: np.ndarray, basis: GalerkinBasis) -> np.ndarray:
    """Full (N·dim)² matrix of ∫ weight e_a·e_b; blocks are diagonal across components.

    The products e_a·e_b stay inside the 2/3 band whenever the basis does, so
    grid quadrature against ``weight`` equals quadrature against its dealiased part.
    """
    phi = basis.values
    block = (phi * np.ravel(weight)) @ phi.T * basis.grid.cell_volume
    block = 0.5 * (block + block.T)
    return np.kron(np.eye(basis.dim), block)


@dataclass(frozen=True, eq=False)
class MassOperator:
    basis: GalerkinBasis
    matrix: np.ndarray
    factor: tuple

    def apply(self, lam: np.ndarray) -> np.ndarray:
        return self.matrix @ lam

    def solve(self, rhs: np.ndarray) -> np.ndarray:
        return cho_solve(self.factor, rhs)

    @cached_property
    def eigenvalues(self) -> np.ndarray:
        return np.linalg.eigvalsh(self.matrix)

    @property
    def inverse_norm(self) -> float:
        """‖M⁻¹‖₂ = 1/λ_min(M)."""
        return float(1.0 / self.eigenvalues[0])


def assemble_mass(rho: ScalarField, basis: GalerkinBasis) -> MassOperator:
    if rho.grid != basis.grid:
        raise GridError("grid mismatch between density and basis")
    matrix = weighted_gram(rho.values, basis)
    try:
        factor = cho_factor(matrix, lower=True)
    except LinAlgError as exc:
        raise MassOperatorError(
            f"mass matrix not positive definite (min density {rho.min():.3e})"
        ) from exc
    matrix.flags.writeable = False
    return MassOperator(basis, matrix, factor)
