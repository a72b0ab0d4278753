"""Property suites behind ``nsfg check <suite>``."""
import logging
import math
from typing import Callable

import numpy as np
from pydantic import BaseModel
from scipy.integrate import solve_ivp

from nsfg.basis import build_basis
from nsfg.core.errors import UnknownSuiteError
from nsfg.cutoffs import DensityCutoff, PhiN
from nsfg.diagnostics import (
    bd_identity_residual,
    bd_rate,
    bd_terms,
    energy_dissipation_residual,
    energy_monotonicity,
    jungel_check,
    random_positive_density,
)
from nsfg.fields import Grid, ScalarField, VectorField
from nsfg.harness.presets import initial_state
from nsfg.harness.runner import advance
from nsfg.harness.schema import parse_config
from nsfg.models import RegularizationParams, SystemState
from nsfg.momentum import assemble_mass
from nsfg.thermal import HeatLaw, step_temperature

logger = logging.getLogger(__name__)

SUITE_SEED = 20240601


class PropertyResult(BaseModel):
    suite: str
    name: str
    samples: int
    worst_margin: float
    passed: bool


def _result(suite: str, name: str, margins: np.ndarray, passed: bool) -> PropertyResult:
    margins = np.atleast_1d(np.asarray(margins, dtype=float))
    return PropertyResult(suite=suite, name=name, samples=int(margins.size), worst_margin=float(np.max(margins)), passed=bool(passed))


def check_jungel(samples: int = 100) -> list[PropertyResult]:
    """Both density-gradient inequalities on seeded random positive densities.

    Margins are the relative shortfalls (rhs − lhs)/lhs; nonpositive means the inequality holds.
    """
    rng = np.random.default_rng(SUITE_SEED)
    grid = Grid(1, 64)
    first, second = [], []
    for _ in range(samples):
        result = jungel_check(random_positive_density(grid, rng, floor=0.1))
        scale = max(abs(result.lhs), 1e-300)
        first.append((result.rhs1 - result.lhs) / scale)
        second.append((result.rhs2 - result.lhs) / scale)
    return [
        _result("jungel", "hessian_sqrt_rho", first, max(first) <= 1e-12),
        _result("jungel", "gradient_quarter_power", second, max(second) <= 1e-12),
    ]


def check_cutoffs(samples: int = 10_000) -> list[PropertyResult]:
    rng = np.random.default_rng(SUITE_SEED)
    results = []
    continuity, prime_continuity, derivative_excess, hessian_excess, agreement = [], [], [], [], []
    for n in (0.5, 1.0, 5.0, 20.0):
        phi = PhiN(n)
        for knot, (a, b) in ((n, (0, 1)), (phi.C_n, (1, 2))):
            values = phi.value_branches(np.array([knot]))
            primes = phi.prime_branches(np.array([knot]))
            scale = max(1.0, abs(float(values[a][0])))
            continuity.append(abs(float(values[a][0] - values[b][0])) / scale)
            prime_continuity.append(abs(float(primes[a][0] - primes[b][0])) / max(1.0, abs(float(primes[a][0]))))
        y = rng.uniform(0.0, 2.0 * phi.C_n, size=samples)
        prime = phi.prime(y)
        derivative_excess.append(max(float(np.max(-prime)), float(np.max(prime - (1.0 + np.log1p(y))))))
        u = rng.normal(size=(samples, 3)) * math.sqrt(phi.C_n / 3.0)
        norms = np.linalg.norm(phi.hessian(u), ord=2, axis=(-2, -1))
        hessian_excess.append(float(np.max(norms)) - phi.hessian_bound)
        inside = y[y <= n]
        if inside.size:
            agreement.append(float(np.max(np.abs(phi.value(inside) - (1.0 + inside) * np.log1p(inside)))))
    results.append(_result("cutoffs", "knot_continuity", continuity, max(continuity) <= 1e-12))
    results.append(_result("cutoffs", "knot_derivative_continuity", prime_continuity, max(prime_continuity) <= 1e-12))
    results.append(_result("cutoffs", "derivative_bounds", derivative_excess, max(derivative_excess) <= 1e-12))
    results.append(_result("cutoffs", "hessian_bound", hessian_excess, max(hessian_excess) <= 1e-12))
    results.append(_result("cutoffs", "log_branch_exact", agreement, max(agreement) == 0.0))

    slope_excess = []
    rho = np.linspace(1e-4, 50.0, samples)
    for cutoff in (DensityCutoff.lower(2.0), DensityCutoff.lower(10.0), DensityCutoff.upper(1.0), DensityCutoff.upper(5.0)):
        slope = np.abs(cutoff.derivative(rho))
        slope_excess.append(float(np.max(slope)) - cutoff.derivative_bound * (1.0 + 1e-12))
        slope_excess.append(float(np.max(rho * slope)) - cutoff.rho_derivative_bound * (1.0 + 1e-12))
    results.append(_result("cutoffs", "density_cutoff_slopes", slope_excess, max(slope_excess) <= 0.0))
    return results


def check_mass_operator(samples: int = 100) -> list[PropertyResult]:
    rng = np.random.default_rng(SUITE_SEED)
    grid = Grid(1, 32)
    basis = build_basis(grid, 8)
    excess = []
    for _ in range(samples):
        rho = random_positive_density(grid, rng, floor=rng.uniform(0.1, 1.0))
        bound = (1.0 / rho.min()) * (1.0 + 1e-8)
        excess.append(assemble_mass(rho, basis).inverse_norm - bound)
    c = 2.5
    identity_error = np.abs(assemble_mass(ScalarField.constant(grid, c), basis).matrix - c * np.eye(basis.size)).max()
    return [
        _result("mass-op", "inverse_norm_bound", excess, max(excess) <= 0.0),
        _result("mass-op", "constant_density_identity", [identity_error], identity_error <= 1e-12 * c),
    ]


def _uniform_theta(eps: float, alpha: float, dt: float, t_end: float) -> float:
    grid = Grid(1, 16)
    law = HeatLaw(alpha=alpha)
    rho = ScalarField.constant(grid, 1.0)
    theta = ScalarField.constant(grid, 1.0)
    u = VectorField.zeros(grid)
    for _ in range(int(round(t_end / dt))):
        theta = step_temperature(theta, rho, u, law, eps, dt).theta_new
    return float(theta.values.mean())


def check_thermal_odes() -> list[PropertyResult]:
    """Spatially uniform temperature against (ε+1)θ′ = −εθ^{α+1}."""
    eps, alpha, t_end = 0.1, 2.0, 1.0
    reference = solve_ivp(
        lambda t, y: -eps * y ** (alpha + 1.0) / (eps + 1.0), (0.0, t_end), [1.0], rtol=1e-12, atol=1e-14
    ).y[0, -1]
    steps = (0.1, 0.05, 0.025)
    errors = [abs(_uniform_theta(eps, alpha, dt, t_end) - reference) for dt in steps]
    global_order = float(np.polyfit(np.log(steps), np.log(errors), 1)[0])

    local = [abs(_uniform_theta(eps, alpha, dt, dt) - solve_ivp(
        lambda t, y: -eps * y ** (alpha + 1.0) / (eps + 1.0), (0.0, dt), [1.0], rtol=1e-13, atol=1e-15
    ).y[0, -1]) for dt in steps]
    local_order = float(np.polyfit(np.log(steps), np.log(local), 1)[0])
    return [
        _result("thermal-odes", "global_error_order", [1.0 - global_order], global_order >= 0.9),
        _result("thermal-odes", "one_step_error_order", [2.0 - local_order], local_order >= 1.8),
    ]


def _bump_history(dt: float, t_end: float) -> tuple[list[SystemState], RegularizationParams]:
    config = parse_config(
        {
            "grid": {"dim": 1, "points": 32},
            "numerics": {"N": 8, "dt": dt, "t_end": t_end},
            "params": {
                "eps": 1e-3,
                "kappa_q": 1e-3,
                "r0": 0.1,
                "r1": 0.1,
                "overrides": {"eps_hyper": 1e-12},
            },
            "initial": {"preset": "density-bump", "amplitude": 0.1},
        }
    )
    law = HeatLaw.from_params(config.params)
    history = [initial_state(config)]
    for _ in range(config.numerics.steps):
        history.append(advance(history[-1], config, law))
    return history, config.params


def check_energy_balance() -> list[PropertyResult]:
    steps = (2e-4, 1e-4, 5e-5)
    t_end = 2e-3
    residuals, monotone_excess = [], []
    for dt in steps:
        history, params = _bump_history(dt, t_end)
        residuals.append(abs(energy_dissipation_residual(history, params, len(history) // 2)))
        monotone_excess.append(energy_monotonicity(history, params) - 10.0 * dt**2)
    order = float(np.polyfit(np.log(steps), np.log(np.maximum(residuals, 1e-300)), 1)[0])
    tiny = max(residuals) < 1e-12
    return [
        _result("energy-balance", "residual_order", [1.0 - order], tiny or order >= 0.9),
        _result("energy-balance", "energy_nonincreasing", monotone_excess, max(monotone_excess) <= 0.0),
    ]


def check_bd_identity() -> list[PropertyResult]:
    """BD residual order on the density-bump run, and closure of the identity at its start."""
    steps = (2e-4, 1e-4, 5e-5)
    t_end = 2e-3
    residuals = []
    for dt in steps:
        history, params = _bump_history(dt, t_end)
        residuals.append(abs(bd_identity_residual(history, params, len(history) // 2)))
    order = float(np.polyfit(np.log(steps), np.log(np.maximum(residuals, 1e-300)), 1)[0])
    tiny = max(residuals) < 1e-12

    state = history[len(history) // 2]
    terms = bd_terms(state, params)
    scale = abs(bd_rate(state, params)) + sum(abs(v) for name, v in terms.items() if name != "closure_defect")
    relative_defect = abs(terms["closure_defect"]) / scale
    return [
        _result("bd-identity", "residual_order", [1.0 - order], tiny or order >= 0.9),
        _result("bd-identity", "closure_defect", [relative_defect], relative_defect <= 1e-8),
    ]


SUITES: dict[str, Callable[[], list[PropertyResult]]] = {
    "jungel": check_jungel,
    "cutoffs": check_cutoffs,
    "mass-op": check_mass_operator,
    "thermal-odes": check_thermal_odes,
    "energy-balance": check_energy_balance,
    "bd-identity": check_bd_identity,
}


def run_suite(name: str) -> list[PropertyResult]:
    if name not in SUITES:
        raise UnknownSuiteError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    results = SUITES[name]()
    logger.info("Suite finished", extra={"suite": name, "failed": sum(not r.passed for r in results)})
    return results
