"""The finite Galerkin space X_N of real trigonometric velocity modes."""
import logging
from dataclasses import dataclass, field
from functools import cached_property
from typing import Literal

import numpy as np

from nsfg.core.errors import BasisError, GridError, NonFiniteFieldError
from nsfg.fields import Grid, ScalarField, VectorField

logger = logging.getLogger(__name__)

ModeKind = Literal["const", "cos", "sin"]


@dataclass(frozen=True)
class ScalarMode:
    """One L²-normalized real Fourier mode: constant, cos(k·x) or sin(k·x)."""

    wavevector: tuple[int, ...]
    kind: ModeKind

    def evaluate(self, grid: Grid) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Samples of the mode, its gradient (dim, ...) and its Laplacian."""
        scale = 2.0 * np.pi / grid.length_per_axis
        k = np.asarray(self.wavevector, dtype=float) * scale
        if self.kind == "const":
            value = np.full(grid.shape, 1.0 / np.sqrt(grid.volume))
            return value, np.zeros((grid.dim,) + grid.shape), np.zeros(grid.shape)
        norm = np.sqrt(2.0 / grid.volume)
        phase = sum(k[a] * grid.coordinates[a] for a in range(grid.dim))
        if self.kind == "cos":
            value = norm * np.cos(phase)
            slope = -norm * np.sin(phase)
        else:
            value = norm * np.sin(phase)
            slope = norm * np.cos(phase)
        grad = np.stack([k[a] * slope for a in range(grid.dim)])
        return value, grad, -float(k @ k) * value


@dataclass(frozen=True)
class GalerkinBasis:
    """N scalar modes, each used once per velocity component (N·dim vector functions).

    Vector basis function ``a = c * N + i`` is ``modes[i]`` placed in component ``c``.
    """

    grid: Grid
    N: int
    modes: tuple[ScalarMode, ...] = field(repr=False)

    @property
    def dim(self) -> int:
        return self.grid.dim

    @property
    def size(self) -> int:
        return self.N * self.grid.dim

    @property
    def mode_list(self) -> tuple[tuple[tuple[int, ...], ModeKind], ...]:
        return tuple((m.wavevector, m.kind) for m in self.modes)

    @cached_property
    def _tables(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        evaluated = [m.evaluate(self.grid) for m in self.modes]
        values = np.stack([v.ravel() for v, _, _ in evaluated])
        grads = np.stack([g.reshape(self.dim, -1) for _, g, _ in evaluated], axis=1)
        laps = np.stack([lap.ravel() for _, _, lap in evaluated])
        for arr in (values, grads, laps):
            arr.flags.writeable = False
        return values, grads, laps

    @property
    def values(self) -> np.ndarray:
        """(N, points) samples of the scalar modes."""
        return self._tables[0]

    @property
    def gradients(self) -> np.ndarray:
        """(dim, N, points) samples of ∂_j of the scalar modes."""
        return self._tables[1]

    @property
    def laplacians(self) -> np.ndarray:
        return self._tables[2]

    @cached_property
    def max_mode_index(self) -> int:
        return max(max(abs(c) for c in m.wavevector) for m in self.modes)

    @cached_property
    def max_wavenumber(self) -> float:
        scale = 2.0 * np.pi / self.grid.length_per_axis
        return scale * max(float(np.sqrt(sum(c * c for c in m.wavevector))) for m in self.modes)

    def weak(self, density: np.ndarray) -> np.ndarray:
        """(N,) array of ∫ density · φ_i for a flat or grid-shaped sample array."""
        return self.values @ np.ravel(density) * self.grid.cell_volume

    def weak_gradient(self, density: np.ndarray, axis: int) -> np.ndarray:
        """(N,) array of ∫ density · ∂_axis φ_i."""
        return self.gradients[axis] @ np.ravel(density) * self.grid.cell_volume

    def weak_laplacian(self, density: np.ndarray) -> np.ndarray:
        return self.laplacians @ np.ravel(density) * self.grid.cell_volume


def resolvable_mode_count(grid: Grid) -> int:
    return (grid.points_per_axis - 1) ** grid.dim


def build_basis(grid: Grid, N: int) -> GalerkinBasis:
    """Lowest N real Fourier modes ordered by |k|², then lexicographically, cos before sin."""
    if N < 1:
        raise BasisError(f"N must be >= 1, got {N}")
    capacity = resolvable_mode_count(grid)
    if N > capacity:
        raise BasisError(f"N={N} exceeds the {capacity} resolvable modes of the grid")

    half = grid.points_per_axis // 2
    axis_range = np.arange(-half + 1, half)
    lattice = np.stack(np.meshgrid(*([axis_range] * grid.dim), indexing="ij"), axis=-1)
    lattice = lattice.reshape(-1, grid.dim)
    # one representative per ±k pair: first nonzero component positive
    nonzero = lattice != 0
    first = np.argmax(nonzero, axis=1)
    leading = lattice[np.arange(len(lattice)), first]
    canonical = lattice[nonzero.any(axis=1) & (leading > 0)]
    norms = np.sum(canonical**2, axis=1)
    order = np.lexsort(tuple(canonical[:, a] for a in reversed(range(grid.dim))) + (norms,))

    modes: list[ScalarMode] = [ScalarMode((0,) * grid.dim, "const")]
    for idx in order:
        if len(modes) >= N:
            break
        k = tuple(int(c) for c in canonical[idx])
        modes.append(ScalarMode(k, "cos"))
        if len(modes) < N:
            modes.append(ScalarMode(k, "sin"))

    basis = GalerkinBasis(grid, N, tuple(modes))
    if 2 * basis.max_mode_index > grid.points_per_axis // 3:
        logger.warning(
            "Velocity products exceed the dealiased band",
            extra={"N": N, "max_mode": basis.max_mode_index, "points": grid.points_per_axis},
        )
    return basis


@dataclass(frozen=True, eq=False)
class GalerkinVelocity:
    """Coefficients λ of u_N = Σ λ_a e_a."""

    basis: GalerkinBasis
    coefficients: np.ndarray

    def __post_init__(self) -> None:
        lam = np.array(self.coefficients, dtype=float).ravel()
        if lam.size != self.basis.size:
            raise BasisError(f"expected {self.basis.size} coefficients, got {lam.size}")
        if not np.all(np.isfinite(lam)):
            raise NonFiniteFieldError("non-finite velocity coefficients")
        lam.flags.writeable = False
        object.__setattr__(self, "coefficients", lam)

    @property
    def lam(self) -> np.ndarray:
        return self.coefficients

    @cached_property
    def field(self) -> VectorField:
        return reconstruct(self)

    @classmethod
    def zero(cls, basis: GalerkinBasis) -> "GalerkinVelocity":
        return cls(basis, np.zeros(basis.size))

    def by_component(self) -> np.ndarray:
        """(dim, N) view of the coefficients."""
        return self.coefficients.reshape(self.basis.dim, self.basis.N)


def project(v: VectorField, basis: GalerkinBasis) -> GalerkinVelocity:
    """L²-orthogonal projection: λ_a = ⟨v, e_a⟩."""
    if v.grid != basis.grid:
        raise GridError("grid mismatch between field and basis")
    lam = np.concatenate([basis.weak(component.values) for component in v])
    return GalerkinVelocity(basis, lam)


def reconstruct(gv: GalerkinVelocity) -> VectorField:
    basis = gv.basis
    arrays = gv.by_component() @ basis.values
    return VectorField.from_arrays(basis.grid, (row.reshape(basis.grid.shape) for row in arrays))


def sup_norm_constant(basis: GalerkinBasis) -> float:
    """C(N) = Σ_a ‖e_a‖_∞ over all N·dim vector basis functions."""
    return float(basis.dim * np.abs(basis.values).max(axis=1).sum())


def scalar_mode_field(basis: GalerkinBasis, index: int) -> ScalarField:
    return ScalarField(basis.grid, basis.values[index].reshape(basis.grid.shape))
