"""Smooth cut-offs in density and the truncated velocity v = φ_m(ρ)φ_K(ρ)u."""
import math
from dataclasses import dataclass
from typing import Literal

import numpy as np

from nsfg.core.errors import CutoffError, GridError
from nsfg.fields import ScalarField, VectorField

CutoffKind = Literal["lower", "upper"]

# max of the smoothstep slope 30t²(1−t)², attained at t = 1/2
SMOOTHSTEP_SLOPE = 15.0 / 8.0


def smoothstep(t: np.ndarray) -> np.ndarray:
    """C² ramp 6t⁵ − 15t⁴ + 10t³, clamped to [0, 1] outside the unit interval."""
    t = np.clip(t, 0.0, 1.0)
    return t**3 * (t * (6.0 * t - 15.0) + 10.0)


def smoothstep_slope(t: np.ndarray) -> np.ndarray:
    inside = (t > 0.0) & (t < 1.0)
    t = np.clip(t, 0.0, 1.0)
    return np.where(inside, 30.0 * t**2 * (1.0 - t) ** 2, 0.0)


@dataclass(frozen=True)
class DensityCutoff:
    """φ_m (``lower``, ramp on [1/(16m), 1/m]) or φ_K (``upper``, ramp on [K, 2K]).

    ``threshold`` is m for the lower kind and K for the upper kind.
    """

    kind: CutoffKind
    threshold: float

    def __post_init__(self) -> None:
        if self.kind not in ("lower", "upper"):
            raise CutoffError(f"unknown cutoff kind {self.kind!r}")
        if not self.threshold > 0:
            raise CutoffError(f"cutoff threshold must be positive, got {self.threshold}")

    @classmethod
    def lower(cls, m: float) -> "DensityCutoff":
        return cls("lower", m)

    @classmethod
    def upper(cls, K: float) -> "DensityCutoff":
        return cls("upper", K)

    @property
    def ramp(self) -> tuple[float, float]:
        if self.kind == "lower":
            # largest start that keeps sup|φ′_m| = 2m for the quintic profile
            return (1.0 - SMOOTHSTEP_SLOPE / 2.0) / self.threshold, 1.0 / self.threshold
        return self.threshold, 2.0 * self.threshold

    def _coordinate(self, rho: np.ndarray) -> np.ndarray:
        start, stop = self.ramp
        return (np.asarray(rho, dtype=float) - start) / (stop - start)

    def __call__(self, rho: np.ndarray) -> np.ndarray:
        s = smoothstep(self._coordinate(rho))
        return s if self.kind == "lower" else 1.0 - s

    def derivative(self, rho: np.ndarray) -> np.ndarray:
        start, stop = self.ramp
        slope = smoothstep_slope(self._coordinate(rho)) / (stop - start)
        return slope if self.kind == "lower" else -slope

    @property
    def derivative_bound(self) -> float:
        """sup|φ′|: 2m for the lower kind, 15/(8K) <= 2/K for the upper kind."""
        start, stop = self.ramp
        return SMOOTHSTEP_SLOPE / (stop - start)

    @property
    def rho_derivative_bound(self) -> float:
        """sup ρ|φ′(ρ)|, independent of the threshold: about 1.153 (lower) and 2.851 (upper).

        With ρ = start + t·width and c = start/width this is the maximum of
        30(c + t)t²(1 − t)² over [0, 1], attained at the root of 2c + (3 − 4c)t − 5t².
        """
        start, stop = self.ramp
        c = start / (stop - start)
        t = ((3.0 - 4.0 * c) + math.sqrt((3.0 - 4.0 * c) ** 2 + 40.0 * c)) / 10.0
        return 30.0 * (c + t) * t**2 * (1.0 - t) ** 2


def combined_cutoff(rho: np.ndarray, m: float, K: float) -> np.ndarray:
    """φ(ρ) = φ_m(ρ)φ_K(ρ)."""
    return DensityCutoff.lower(m)(rho) * DensityCutoff.upper(K)(rho)


def truncated_velocity(rho: ScalarField, u: VectorField, m: float, K: float) -> VectorField:
    """v = φ_m(ρ)φ_K(ρ)u; equals u wherever 1/m ≤ ρ ≤ K."""
    if rho.grid != u.grid:
        raise GridError("grid mismatch between density and velocity")
    weight = ScalarField(rho.grid, combined_cutoff(rho.values, m, K))
    return u * weight
