"""Weak-form right-hand side of the Galerkin momentum system.

For every vector basis function ψ = e_a the system reads
d/dt ∫ρu·ψ = Σ_terms F_term(ψ), with

  convection     +∫ρ u⊗u : ∇ψ
  viscous        −∫2ρD(u) : ∇ψ
  pressure       +∫ρθ div ψ                     (P = Rρθ, R = 1)
  biharmonic     −ε_bi ∫Δu·Δψ
  cold_pressure  +ε_cold ∫ρ P(∇ρ^{-11})·ψ       (potential ε/10 ∫ρ^{-10})
  cross          −ε_cross ∫(∇ρ·∇)u·ψ
  hyper          +ε_hyper ∫ρ∇Δ⁹ρ̃·ψ             (ρ̃ the dealiased density)
  drag0          −r₀∫u·ψ
  drag1          −r₁∫ρ|u|²u·ψ
  capillary      −2κ∫Δ√ρ ∇√ρ·ψ − κ∫Δ√ρ √ρ div ψ
"""
from dataclasses import dataclass
from functools import cached_property
from typing import Callable

import numpy as np

from nsfg.basis import GalerkinBasis
from nsfg.core.errors import NonFiniteFieldError
from nsfg.fields import (
    ScalarField,
    VectorField,
    dealias,
    derivative,
    divergence,
    gradient,
    jacobian,
    laplacian,
    laplacian_power,
)
from nsfg.models import RegularizationParams, SystemState
from nsfg.transport import check_density

FORCE_TERMS = (
    "convection",
    "viscous",
    "pressure",
    "biharmonic",
    "cold_pressure",
    "cross",
    "hyper",
    "drag0",
    "drag1",
    "capillary",
)


@dataclass(frozen=True, eq=False)
class ForceBreakdown:
    """One coefficient vector (length N·dim) per term; ``total`` sums them once."""

    terms: dict[str, np.ndarray]

    def __getitem__(self, name: str) -> np.ndarray:
        return self.terms[name]

    @cached_property
    def total(self) -> np.ndarray:
        return np.sum([self.terms[name] for name in FORCE_TERMS], axis=0)

    def power(self, lam: np.ndarray) -> dict[str, float]:
        """Work λ·F of each term, i.e. its contribution to d/dt ½∫ρ|u|²."""
        return {name: float(lam @ vec) for name, vec in self.terms.items()}


class _Kinematics:
    """Velocity samples and derivatives evaluated from the basis tables."""

    def __init__(self, basis: GalerkinBasis, lam: np.ndarray):
        coeffs = lam.reshape(basis.dim, basis.N)
        self.u = coeffs @ basis.values  # (dim, points)
        self.jac = np.einsum("cn,jnp->cjp", coeffs, basis.gradients)  # ∂_j u_c
        self.lap = coeffs @ basis.laplacians


def _weak_vector(basis: GalerkinBasis, density: np.ndarray) -> np.ndarray:
    """∫ density_c φ_i for a (dim, points) density."""
    return np.concatenate([basis.weak(density[c]) for c in range(basis.dim)])


def _weak_tensor(basis: GalerkinBasis, tensor: np.ndarray) -> np.ndarray:
    """∫ T_cj ∂_j φ_i for a (dim, dim, points) tensor."""
    return np.concatenate(
        [sum(basis.weak_gradient(tensor[c, j], j) for j in range(basis.dim)) for c in range(basis.dim)]
    )


def _weak_divergence(basis: GalerkinBasis, scalar: np.ndarray) -> np.ndarray:
    """∫ s div ψ for ψ = φ_i in component c."""
    return np.concatenate([basis.weak_gradient(scalar, c) for c in range(basis.dim)])


def _flat_gradient(f: ScalarField) -> np.ndarray:
    return np.stack([g.values.ravel() for g in gradient(f)])


def assemble_forces(state: SystemState, params: RegularizationParams) -> ForceBreakdown:
    """Every term of the weak momentum balance, tested against each basis function."""
    check_density(state.rho)
    basis = state.basis
    dim = basis.dim
    rho = state.rho
    r = rho.values.ravel()
    kin = _Kinematics(basis, state.velocity.lam)
    zero = np.zeros(basis.size)

    eps_bi = params.eps_for("bi")
    eps_cold = params.eps_for("cold")
    eps_cross = params.eps_for("cross")
    eps_hyper = params.eps_for("hyper")

    def convection():
        return _weak_tensor(basis, r * kin.u[:, None, :] * kin.u[None, :, :])

    def viscous():
        strain = 0.5 * (kin.jac + kin.jac.transpose(1, 0, 2))
        return -_weak_tensor(basis, 2.0 * r * strain)

    def pressure():
        return _weak_divergence(basis, r * state.theta.values.ravel())

    def biharmonic():
        if not eps_bi:
            return zero
        return -eps_bi * np.concatenate([basis.weak_laplacian(kin.lap[c]) for c in range(dim)])

    def cold_pressure():
        if not eps_cold:
            return zero
        inv = rho ** -11.0
        force = np.stack([r * dealias(derivative(inv, c)).values.ravel() for c in range(dim)])
        return eps_cold * _weak_vector(basis, force)

    def cross():
        if not eps_cross:
            return zero
        grad_rho = _flat_gradient(rho)
        force = np.einsum("jp,cjp->cp", grad_rho, kin.jac)
        return -eps_cross * _weak_vector(basis, force)

    def hyper():
        if not eps_hyper:
            return zero
        lap9 = laplacian_power(dealias(rho), 9)
        return eps_hyper * _weak_vector(basis, r * _flat_gradient(lap9))

    def drag0():
        if not params.r0:
            return zero
        return -params.r0 * _weak_vector(basis, kin.u)

    def drag1():
        if not params.r1:
            return zero
        speed_sq = np.sum(kin.u**2, axis=0)
        return -params.r1 * _weak_vector(basis, r * speed_sq * kin.u)

    def capillary():
        if not params.kappa_q:
            return zero
        sqrt_rho = rho.apply(np.sqrt)
        lap_sqrt = laplacian(sqrt_rho).values.ravel()
        pair_a = _weak_vector(basis, lap_sqrt * _flat_gradient(sqrt_rho))
        pair_b = _weak_divergence(basis, lap_sqrt * sqrt_rho.values.ravel())
        return -params.kappa_q * (2.0 * pair_a + pair_b)

    builders: dict[str, Callable[[], np.ndarray]] = {
        "convection": convection,
        "viscous": viscous,
        "pressure": pressure,
        "biharmonic": biharmonic,
        "cold_pressure": cold_pressure,
        "cross": cross,
        "hyper": hyper,
        "drag0": drag0,
        "drag1": drag1,
        "capillary": capillary,
    }
    terms: dict[str, np.ndarray] = {}
    for name, build in builders.items():
        try:
            vec = np.asarray(build(), dtype=float)
        except NonFiniteFieldError as exc:
            raise NonFiniteFieldError(f"non-finite intermediate in {name} term") from exc
        if not np.all(np.isfinite(vec)):
            raise NonFiniteFieldError(f"non-finite intermediate in {name} term")
        terms[name] = vec
    return ForceBreakdown(terms)


def capillary_strong_form(rho: ScalarField, basis: GalerkinBasis, kappa: float) -> np.ndarray:
    """∫κρ∇(Δ√ρ/√ρ)·e_a, the Bohm-potential form of the capillary pair."""
    sqrt_rho = rho.apply(np.sqrt)
    potential = laplacian(sqrt_rho) / sqrt_rho
    return kappa * _weak_vector(basis, rho.values.ravel() * _flat_gradient(potential))


def strong_forces(state: SystemState, params: RegularizationParams) -> VectorField:
    """Pointwise momentum right-hand side; ∫F·e_a reproduces ``assemble_forces`` term by term."""
    check_density(state.rho)
    rho, theta, u = state.rho, state.theta, state.u
    dim = state.grid.dim
    jac = jacobian(u)
    eps_bi = params.eps_for("bi")
    eps_cold = params.eps_for("cold")
    eps_cross = params.eps_for("cross")
    eps_hyper = params.eps_for("hyper")

    pressure = gradient(rho * theta)
    grad_rho = gradient(rho)
    speed_sq = u.norm_squared()
    if eps_cold:
        cold = gradient(rho**-11.0)
    if eps_hyper:
        lap9 = laplacian_power(dealias(rho), 9)
    if params.kappa_q:
        sqrt_rho = rho.apply(np.sqrt)
        lap_sqrt = laplacian(sqrt_rho)
        bohm = gradient(lap_sqrt * sqrt_rho)

    components = []
    for i in range(dim):
        force = -divergence(VectorField(rho * u[i] * u[j] for j in range(dim)))
        force = force + divergence(VectorField(rho * (jac[i][j] + jac[j][i]) for j in range(dim)))
        force = force - pressure[i]
        if eps_bi:
            force = force - eps_bi * laplacian_power(u[i], 2)
        if eps_cold:
            force = force + eps_cold * rho * dealias(cold[i])
        if eps_cross:
            force = force - eps_cross * grad_rho.dot(VectorField(jac[i]))
        if eps_hyper:
            force = force + eps_hyper * rho * derivative(lap9, i)
        if params.r0:
            force = force - params.r0 * u[i]
        if params.r1:
            force = force - params.r1 * rho * speed_sq * u[i]
        if params.kappa_q:
            force = force + params.kappa_q * (bohm[i] - 2.0 * lap_sqrt * derivative(sqrt_rho, i))
        components.append(force)
    return VectorField(components)
