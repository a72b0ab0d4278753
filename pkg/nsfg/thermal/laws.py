"""Heat-conduction law κ = κ₀(1+θ^α) and the renormalizing functions h."""
from dataclasses import dataclass
from typing import Callable, Optional, Union

import numpy as np

from nsfg.core.errors import HeatLawError, InvalidHFunctionError
from nsfg.fields import ScalarField
from nsfg.models import RegularizationParams

Kappa0 = Union[float, Callable[[np.ndarray, np.ndarray], np.ndarray]]
Scalar = Callable[[np.ndarray], np.ndarray]


@dataclass(frozen=True)
class HeatLaw:
    """κ(ρ, θ) = κ₀(ρ, θ)(1 + θ^α) with c₁ <= κ₀ <= 1/c₁."""

    alpha: float = 2.0
    kappa0: Kappa0 = 1.0
    c1: float = 0.5

    def __post_init__(self) -> None:
        if self.alpha < 2:
            raise HeatLawError(f"alpha must be >= 2, got {self.alpha}")
        if not 0 < self.c1 <= 1:
            raise HeatLawError(f"c1 must lie in (0, 1], got {self.c1}")
        k = self.constant_kappa0
        if k is not None and not self.c1 <= k <= 1.0 / self.c1:
            raise HeatLawError(f"kappa0={k} outside [{self.c1}, {1.0 / self.c1}]")

    @classmethod
    def from_params(cls, params: RegularizationParams) -> "HeatLaw":
        return cls(alpha=params.alpha, kappa0=params.kappa0, c1=params.c1)

    @property
    def constant_kappa0(self) -> Optional[float]:
        return None if callable(self.kappa0) else float(self.kappa0)

    def kappa0_values(self, rho: np.ndarray, theta: np.ndarray) -> np.ndarray:
        if not callable(self.kappa0):
            return np.full(np.shape(theta), float(self.kappa0))
        values = np.asarray(self.kappa0(rho, theta), dtype=float)
        if np.any(values < self.c1) or np.any(values > 1.0 / self.c1):
            raise HeatLawError("kappa0 left its admissible band [c1, 1/c1]")
        return np.broadcast_to(values, np.shape(theta))

    def kappa_values(self, rho: np.ndarray, theta: np.ndarray) -> np.ndarray:
        positive = np.maximum(theta, 0.0)
        return self.kappa0_values(rho, theta) * (1.0 + positive**self.alpha)


def conductivity(rho: ScalarField, theta: ScalarField, law: HeatLaw) -> ScalarField:
    return ScalarField(theta.grid, law.kappa_values(rho.values, theta.values))


@dataclass(frozen=True)
class HFunction:
    """Renormalizing weight h with its first two derivatives.

    ``primitive`` is the closed form of Q_h(θ) = ∫₀^θ h when known.
    """

    h: Scalar
    h_prime: Scalar
    h_double_prime: Scalar
    label: str
    primitive: Optional[Scalar] = None


def reciprocal_h() -> HFunction:
    """h(z) = 1/(1+z)."""
    return HFunction(
        h=lambda z: 1.0 / (1.0 + z),
        h_prime=lambda z: -1.0 / (1.0 + z) ** 2,
        h_double_prime=lambda z: 2.0 / (1.0 + z) ** 3,
        label="reciprocal",
        primitive=np.log1p,
    )


def power_h(omega: float) -> HFunction:
    """h(z) = (1+z)^{-ω}, 0 < ω < 1."""
    if not 0 < omega < 1:
        raise InvalidHFunctionError(f"omega must lie in (0, 1), got {omega}")
    return HFunction(
        h=lambda z: (1.0 + z) ** -omega,
        h_prime=lambda z: -omega * (1.0 + z) ** (-omega - 1.0),
        h_double_prime=lambda z: omega * (omega + 1.0) * (1.0 + z) ** (-omega - 2.0),
        label=f"power(omega={omega:g})",
        primitive=lambda z: ((1.0 + z) ** (1.0 - omega) - 1.0) / (1.0 - omega),
    )


def ratio_h(omega: float) -> HFunction:
    """h(z) = ω/(ω+z)."""
    if omega <= 0:
        raise InvalidHFunctionError(f"omega must be positive, got {omega}")
    return HFunction(
        h=lambda z: omega / (omega + z),
        h_prime=lambda z: -omega / (omega + z) ** 2,
        h_double_prime=lambda z: 2.0 * omega / (omega + z) ** 3,
        label=f"ratio(omega={omega:g})",
        primitive=lambda z: omega * np.log1p(z / omega),
    )


def unit_h() -> HFunction:
    """h ≡ 1, the ω → 0 member of the power family."""
    return HFunction(
        h=lambda z: np.ones_like(np.asarray(z, dtype=float)),
        h_prime=lambda z: np.zeros_like(np.asarray(z, dtype=float)),
        h_double_prime=lambda z: np.zeros_like(np.asarray(z, dtype=float)),
        label="unit",
        primitive=lambda z: np.asarray(z, dtype=float),
    )


H_FAMILIES: dict[str, Callable[..., HFunction]] = {
    "reciprocal": lambda omega=None: reciprocal_h(),
    "power": lambda omega=0.5: power_h(omega),
    "ratio": lambda omega=1.0: ratio_h(omega),
    "unit": lambda omega=None: unit_h(),
}


def admissibility_samples() -> np.ndarray:
    return np.concatenate([[0.0], np.logspace(-6, 6, 2401)])


def admissibility_margins(h: HFunction) -> dict[str, float]:
    """Worst violation of each admissibility condition (<= 0 means satisfied)."""
    z = admissibility_samples()
    hz = np.asarray(h.h(z), dtype=float)
    hp = np.asarray(h.h_prime(z), dtype=float)
    hpp = np.asarray(h.h_double_prime(z), dtype=float)
    return {
        "h(0)=1": float(abs(hz[0] - 1.0)) - 1e-12,
        "non_increasing": float(max(np.max(np.diff(hz)), np.max(hp))),
        "convexity": float(np.max(2.0 * hp**2 - hpp - 1e-12 * (1.0 + np.abs(hpp)))),
    }


def validate_h(h: HFunction) -> HFunction:
    """Return ``h`` unchanged or raise InvalidHFunctionError naming the failed condition."""
    failed = [name for name, margin in admissibility_margins(h).items() if margin > 0]
    if failed:
        raise InvalidHFunctionError(f"h '{h.label}' violates: {', '.join(failed)}")
    return h
