from dataclasses import dataclass
from functools import cached_property

import numpy as np

from nsfg.core.errors import GridError


@dataclass(frozen=True)
class Grid:
    """Uniform periodic grid on the torus [0, L)^dim."""

    dim: int
    points_per_axis: int
    length_per_axis: float = 2.0 * np.pi

    def __post_init__(self) -> None:
        if self.dim not in (1, 2, 3):
            raise GridError(f"dim must be 1, 2 or 3, got {self.dim}")
        n = self.points_per_axis
        if n < 8 or n % 2:
            raise GridError(f"points_per_axis must be an even integer >= 8, got {n}")
        if not np.isfinite(self.length_per_axis) or self.length_per_axis <= 0:
            raise GridError(f"length_per_axis must be positive, got {self.length_per_axis}")

    @property
    def shape(self) -> tuple[int, ...]:
        return (self.points_per_axis,) * self.dim

    @property
    def size(self) -> int:
        return self.points_per_axis**self.dim

    @property
    def spacing(self) -> float:
        return self.length_per_axis / self.points_per_axis

    @property
    def volume(self) -> float:
        return self.length_per_axis**self.dim

    @property
    def cell_volume(self) -> float:
        return self.spacing**self.dim

    @property
    def spectral_shape(self) -> tuple[int, ...]:
        n = self.points_per_axis
        return (n,) * (self.dim - 1) + (n // 2 + 1,)

    @cached_property
    def coordinates(self) -> tuple[np.ndarray, ...]:
        x = np.arange(self.points_per_axis) * self.spacing
        return tuple(np.meshgrid(*([x] * self.dim), indexing="ij"))

    @cached_property
    def mode_numbers(self) -> tuple[np.ndarray, ...]:
        """Integer mode index per axis, shaped to broadcast over the rfftn spectrum."""
        n = self.points_per_axis
        modes = []
        for axis in range(self.dim):
            if axis == self.dim - 1:
                m = np.arange(n // 2 + 1)
            else:
                m = np.fft.fftfreq(n, d=1.0 / n).round().astype(int)
            shape = [1] * self.dim
            shape[axis] = m.size
            modes.append(m.reshape(shape))
        return tuple(modes)

    @cached_property
    def wavenumbers(self) -> tuple[np.ndarray, ...]:
        scale = 2.0 * np.pi / self.length_per_axis
        return tuple(scale * m for m in self.mode_numbers)

    @cached_property
    def k_squared(self) -> np.ndarray:
        total = np.zeros(self.spectral_shape)
        for k in self.wavenumbers:
            total = total + k**2
        return total

    def nyquist_mask(self, axis: int) -> np.ndarray:
        """True where the mode along ``axis`` is the Nyquist mode."""
        m = self.mode_numbers[axis]
        return np.broadcast_to(np.abs(m) == self.points_per_axis // 2, self.spectral_shape)

    @cached_property
    def dealias_mask(self) -> np.ndarray:
        """2/3-rule mask: keeps modes with every |m_a| <= n // 3."""
        cutoff = self.points_per_axis // 3
        keep = np.ones(self.spectral_shape, dtype=bool)
        for m in self.mode_numbers:
            keep = keep & (np.abs(m) <= cutoff)
        return keep

    @cached_property
    def half_spectrum_weights(self) -> np.ndarray:
        """Multiplicity of each rfftn coefficient in the full spectrum."""
        m_last = self.mode_numbers[-1]
        n = self.points_per_axis
        w = np.where((m_last == 0) | (m_last == n // 2), 1.0, 2.0)
        return np.broadcast_to(w, self.spectral_shape)

    def refined(self, points_per_axis: int) -> "Grid":
        return Grid(self.dim, points_per_axis, self.length_per_axis)
