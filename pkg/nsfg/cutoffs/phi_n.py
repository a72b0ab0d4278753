"""The truncated log-energy family φ̃_n and φ_n(u) = φ̃_n(|u|²).

With L = ln(1+n) and C_n = e(1+n)² − 1:

    φ̃_n(y) = (1+y)ln(1+y)                          0 ≤ y ≤ n
           = 2(1+L)y − (1+y)ln(1+y) + 2(L − n)      n ≤ y ≤ C_n
           = e(1+n)² − 2n − 2                        y ≥ C_n

φ̃_n is C¹; φ̃″_n jumps at both knots and takes its left value there.
"""
import math
from dataclasses import dataclass

import numpy as np

from nsfg.core.errors import CutoffError


@dataclass(frozen=True)
class PhiN:
    n: float

    def __post_init__(self) -> None:
        if not (self.n >= 0 and math.isfinite(self.n)):
            raise CutoffError(f"n must be finite and nonnegative, got {self.n}")

    @property
    def log_n(self) -> float:
        return math.log1p(self.n)

    @property
    def C_n(self) -> float:
        return math.e * (1.0 + self.n) ** 2 - 1.0

    @property
    def plateau(self) -> float:
        return math.e * (1.0 + self.n) ** 2 - 2.0 * self.n - 2.0

    @property
    def hessian_bound(self) -> float:
        return 6.0 + 2.0 * self.log_n

    def _branches(self, y: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        y = np.asarray(y, dtype=float)
        if np.any(y < 0) or not np.all(np.isfinite(y)):
            raise CutoffError("φ̃_n is defined for finite y >= 0 only")
        inner = y <= self.n
        middle = ~inner & (y <= self.C_n)
        return y, inner, middle

    def value_branches(self, y: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """The three branch formulas of φ̃_n, each evaluated everywhere."""
        y = np.asarray(y, dtype=float)
        L = self.log_n
        log_term = (1.0 + y) * np.log1p(y)
        mid = 2.0 * (1.0 + L) * y - log_term + 2.0 * (L - self.n)
        return log_term, mid, np.full_like(y, self.plateau)

    def prime_branches(self, y: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        y = np.asarray(y, dtype=float)
        log1p = np.log1p(y)
        return 1.0 + log1p, 1.0 + 2.0 * self.log_n - log1p, np.zeros_like(y)

    def value(self, y: np.ndarray) -> np.ndarray:
        y, inner, middle = self._branches(y)
        left, mid, plateau = self.value_branches(y)
        return np.where(inner, left, np.where(middle, mid, plateau))

    def prime(self, y: np.ndarray) -> np.ndarray:
        y, inner, middle = self._branches(y)
        left, mid, plateau = self.prime_branches(y)
        return np.where(inner, left, np.where(middle, mid, plateau))

    def double(self, y: np.ndarray) -> np.ndarray:
        y, inner, middle = self._branches(y)
        recip = 1.0 / (1.0 + y)
        return np.where(inner, recip, np.where(middle, -recip, 0.0))

    def of_velocity(self, u: np.ndarray) -> np.ndarray:
        """φ_n(u) for vectors along the last axis."""
        u = np.asarray(u, dtype=float)
        return self.value(np.sum(u * u, axis=-1))

    def gradient(self, u: np.ndarray) -> np.ndarray:
        """∇_u φ_n = 2φ̃′_n(|u|²)u."""
        u = np.asarray(u, dtype=float)
        y = np.sum(u * u, axis=-1)
        return 2.0 * self.prime(y)[..., None] * u

    def hessian(self, u: np.ndarray) -> np.ndarray:
        """2(2φ̃″_n(|u|²) u⊗u + φ̃′_n(|u|²) I), shape (..., d, d)."""
        u = np.asarray(u, dtype=float)
        y = np.sum(u * u, axis=-1)
        outer = u[..., :, None] * u[..., None, :]
        eye = np.eye(u.shape[-1])
        return 2.0 * (2.0 * self.double(y)[..., None, None] * outer + self.prime(y)[..., None, None] * eye)


def phi_tilde_n(y: np.ndarray, n: float) -> np.ndarray:
    return PhiN(n).value(y)


def phi_tilde_n_prime(y: np.ndarray, n: float) -> np.ndarray:
    return PhiN(n).prime(y)


def phi_tilde_n_double(y: np.ndarray, n: float) -> np.ndarray:
    return PhiN(n).double(y)


def phi_n_prime_vec(u: np.ndarray, n: float) -> np.ndarray:
    return PhiN(n).gradient(u)


def phi_n_double_mat(u: np.ndarray, n: float) -> np.ndarray:
    return PhiN(n).hessian(u)
