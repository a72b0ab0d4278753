"""Pointwise primitives 𝒦(θ), Q_h(θ), 𝒦_h(θ) and the inverse of 𝒦."""
from typing import Callable, Optional

import numpy as np
from scipy.integrate import quad_vec
from scipy.optimize import brentq, newton

from nsfg.core.errors import NegativeTemperatureError, ThermalSolveError
from nsfg.fields import ScalarField
from nsfg.thermal.laws import HeatLaw, HFunction

QUAD_EPSABS = 1e-13
QUAD_EPSREL = 1e-12


def _nonnegative(theta: ScalarField) -> np.ndarray:
    if theta.min() < 0:
        raise NegativeTemperatureError(f"negative temperature {theta.min():.3e}")
    return theta.values


def _primitive(theta: np.ndarray, integrand: Callable[[np.ndarray], np.ndarray]) -> np.ndarray:
    """∫₀^θ integrand(z) dz for every sample, via the substitution z = θs."""
    result, _ = quad_vec(
        lambda s: theta * integrand(theta * s), 0.0, 1.0, epsabs=QUAD_EPSABS, epsrel=QUAD_EPSREL
    )
    return result


def _rho_values(theta: ScalarField, rho: Optional[ScalarField]) -> np.ndarray:
    return np.ones(theta.grid.shape) if rho is None else rho.values


def K_of(theta: ScalarField, law: HeatLaw, rho: Optional[ScalarField] = None) -> ScalarField:
    """𝒦(θ) = ∫₀^θ κ₀(1+z^α) dz."""
    t = _nonnegative(theta)
    k0 = law.constant_kappa0
    if k0 is not None:
        return ScalarField(theta.grid, k0 * (t + t ** (law.alpha + 1.0) / (law.alpha + 1.0)))
    r = _rho_values(theta, rho)
    return ScalarField(theta.grid, _primitive(t, lambda z: law.kappa_values(r, z)))


def K_inverse(values: ScalarField, law: HeatLaw, rho: Optional[ScalarField] = None) -> ScalarField:
    """θ with 𝒦(θ) = values, pointwise."""
    v = values.values
    if np.any(v < 0):
        raise NegativeTemperatureError("𝒦 is nonnegative; cannot invert negative values")
    k0 = law.constant_kappa0
    if k0 is not None:
        a = law.alpha

        def residual(t):
            return k0 * (t + t ** (a + 1.0) / (a + 1.0)) - v

        def slope(t):
            return k0 * (1.0 + t**a)

        # 𝒦 is convex and 𝒦(θ) >= κ₀θ, so Newton from v/κ₀ decreases monotonically to the root
        theta = newton(residual, v / k0, fprime=slope, tol=1e-14, maxiter=200)
        return ScalarField(values.grid, np.asarray(theta, dtype=float).reshape(values.grid.shape))

    r = _rho_values(values, rho).ravel()
    flat = v.ravel()
    out = np.empty_like(flat)
    for i, (target, density) in enumerate(zip(flat, r)):
        if target == 0.0:
            out[i] = 0.0
            continue
        upper = target / law.c1

        def residual_at(t, target=target, density=density):
            value, _ = quad_vec(
                lambda s: t * law.kappa_values(np.array(density), np.array(t * s)), 0.0, 1.0
            )
            return float(value) - target

        try:
            out[i] = brentq(residual_at, 0.0, upper, xtol=1e-14)
        except ValueError as exc:
            raise ThermalSolveError(f"could not bracket 𝒦⁻¹({target:.3e})") from exc
    return ScalarField(values.grid, out.reshape(values.grid.shape))


def Q_h(theta: ScalarField, h: HFunction) -> ScalarField:
    """Q_h(θ) = ∫₀^θ h(z) dz."""
    t = _nonnegative(theta)
    if h.primitive is not None:
        return ScalarField(theta.grid, h.primitive(t))
    return ScalarField(theta.grid, _primitive(t, h.h))


def K_h(theta: ScalarField, h: HFunction, law: HeatLaw, rho: Optional[ScalarField] = None) -> ScalarField:
    """𝒦_h(θ) = ∫₀^θ κ(z)h(z) dz."""
    t = _nonnegative(theta)
    r = _rho_values(theta, rho)
    return ScalarField(theta.grid, _primitive(t, lambda z: law.kappa_values(r, z) * h.h(z)))
