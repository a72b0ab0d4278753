"""Immutable scalar and vector fields sampled on a periodic grid."""
from typing import Callable, Iterable, Union

import numpy as np

from nsfg.core.errors import FieldError, GridError, NonFiniteFieldError
from nsfg.fields.grid import Grid

Operand = Union["ScalarField", float, int, np.ndarray]


class ScalarField:
    """Real samples of a scalar function on ``grid``.

    Values are stored read-only; every operation returns a new field and
    rejects non-finite results.
    """

    __slots__ = ("grid", "values")

    def __init__(self, grid: Grid, values: np.ndarray | float):
        arr = np.array(values, dtype=float)
        if arr.ndim == 0:
            arr = np.full(grid.shape, float(arr))
        elif arr.shape != grid.shape:
            if arr.size != grid.size:
                raise FieldError(f"values of shape {arr.shape} do not fit grid {grid.shape}")
            arr = arr.reshape(grid.shape)
        if not np.all(np.isfinite(arr)):
            raise NonFiniteFieldError("field contains NaN or Inf values")
        arr.flags.writeable = False
        self.grid = grid
        self.values = arr

    @classmethod
    def constant(cls, grid: Grid, value: float) -> "ScalarField":
        return cls(grid, np.full(grid.shape, float(value)))

    @classmethod
    def from_function(cls, grid: Grid, fn: Callable[..., np.ndarray]) -> "ScalarField":
        """Sample ``fn(x, y, ...)`` at the grid points."""
        return cls(grid, np.broadcast_to(fn(*grid.coordinates), grid.shape))

    def _operand(self, other: Operand) -> np.ndarray | float:
        if isinstance(other, ScalarField):
            if other.grid != self.grid:
                raise GridError("grid mismatch between fields")
            return other.values
        if isinstance(other, np.ndarray):
            return other.reshape(self.grid.shape) if other.ndim else float(other)
        return float(other)

    def apply(self, fn: Callable[[np.ndarray], np.ndarray]) -> "ScalarField":
        return ScalarField(self.grid, fn(self.values))

    def __add__(self, other: Operand) -> "ScalarField":
        return ScalarField(self.grid, self.values + self._operand(other))

    __radd__ = __add__

    def __sub__(self, other: Operand) -> "ScalarField":
        return ScalarField(self.grid, self.values - self._operand(other))

    def __rsub__(self, other: Operand) -> "ScalarField":
        return ScalarField(self.grid, self._operand(other) - self.values)

    def __mul__(self, other: Operand) -> "ScalarField":
        return ScalarField(self.grid, self.values * self._operand(other))

    __rmul__ = __mul__

    def __truediv__(self, other: Operand) -> "ScalarField":
        return ScalarField(self.grid, self.values / self._operand(other))

    def __rtruediv__(self, other: Operand) -> "ScalarField":
        return ScalarField(self.grid, self._operand(other) / self.values)

    def __neg__(self) -> "ScalarField":
        return ScalarField(self.grid, -self.values)

    def __pow__(self, exponent: float) -> "ScalarField":
        return ScalarField(self.grid, self.values**exponent)

    def min(self) -> float:
        return float(self.values.min())

    def max(self) -> float:
        return float(self.values.max())

    def __repr__(self) -> str:
        return f"ScalarField(grid={self.grid!r}, min={self.min():.4g}, max={self.max():.4g})"


class VectorField:
    """A ``dim``-component vector field; all components share one grid."""

    __slots__ = ("grid", "components")

    def __init__(self, components: Iterable[ScalarField]):
        comps = tuple(components)
        if not comps:
            raise FieldError("a vector field needs at least one component")
        grid = comps[0].grid
        if any(c.grid != grid for c in comps):
            raise GridError("grid mismatch between vector components")
        if len(comps) != grid.dim:
            raise FieldError(f"expected {grid.dim} components, got {len(comps)}")
        self.grid = grid
        self.components = comps

    @classmethod
    def zeros(cls, grid: Grid) -> "VectorField":
        return cls(ScalarField.constant(grid, 0.0) for _ in range(grid.dim))

    @classmethod
    def from_arrays(cls, grid: Grid, arrays: Iterable[np.ndarray]) -> "VectorField":
        return cls(ScalarField(grid, a) for a in arrays)

    def __getitem__(self, index: int) -> ScalarField:
        return self.components[index]

    def __iter__(self):
        return iter(self.components)

    def __len__(self) -> int:
        return len(self.components)

    def as_array(self) -> np.ndarray:
        return np.stack([c.values for c in self.components])

    def __add__(self, other: "VectorField") -> "VectorField":
        return VectorField(a + b for a, b in zip(self.components, other.components))

    def __sub__(self, other: "VectorField") -> "VectorField":
        return VectorField(a - b for a, b in zip(self.components, other.components))

    def __mul__(self, other: Operand) -> "VectorField":
        return VectorField(c * other for c in self.components)

    __rmul__ = __mul__

    def __neg__(self) -> "VectorField":
        return VectorField(-c for c in self.components)

    def dot(self, other: "VectorField") -> ScalarField:
        if other.grid != self.grid:
            raise GridError("grid mismatch between fields")
        return ScalarField(self.grid, np.sum(self.as_array() * other.as_array(), axis=0))

    def norm_squared(self) -> ScalarField:
        return ScalarField(self.grid, np.sum(self.as_array() ** 2, axis=0))

    def sup_norm(self) -> float:
        """max over points of the Euclidean length."""
        return float(np.sqrt(self.norm_squared().values.max()))
