"""Initial conditions: named presets plus explicit trigonometric terms."""
import numpy as np

from nsfg.basis import build_basis, project
from nsfg.core.errors import ConfigError
from nsfg.fields import Grid, ScalarField, VectorField
from nsfg.harness.schema import RunConfig, TrigTerm
from nsfg.models import SystemState


def _phase(grid: Grid, wavevector) -> np.ndarray:
    scale = 2.0 * np.pi / grid.length_per_axis
    return sum(scale * k * x for k, x in zip(wavevector, grid.coordinates))


def _term_values(grid: Grid, term: TrigTerm) -> np.ndarray:
    if len(term.wavevector) != grid.dim:
        raise ConfigError(f"term wavevector {term.wavevector} does not match dimension {grid.dim}")
    wave = np.cos if term.kind == "cos" else np.sin
    return np.broadcast_to(term.amplitude * wave(_phase(grid, term.wavevector)), grid.shape)


def _preset_fields(config: RunConfig, grid: Grid) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    init = config.initial
    a, k = init.amplitude, init.wavenumber
    scale = 2.0 * np.pi / grid.length_per_axis
    x = grid.coordinates
    rho = np.ones(grid.shape)
    u = np.zeros((grid.dim,) + grid.shape)
    theta = np.full(grid.shape, init.theta0)

    if init.preset == "density-bump":
        rho = rho + a * np.sin(k * scale * x[0])
    elif init.preset == "shear":
        across = x[1] if grid.dim > 1 else x[0]
        u[0] = a * np.sin(k * scale * across)
    elif init.preset == "hot-spot":
        bump = np.ones(grid.shape)
        for axis in range(grid.dim):
            bump = bump * 0.5 * (1.0 + np.cos(k * scale * x[axis] - np.pi))
        theta = init.theta0 * (1.0 + a * bump)
    elif init.preset == "drag-only":
        u[0] = a
    elif init.preset == "random":
        from nsfg.diagnostics.jungel import random_positive_density

        rng = np.random.default_rng(init.seed)
        rho = random_positive_density(grid, rng, floor=init.nu).values
        for component in range(grid.dim):
            wavevector = rng.integers(-2, 3, size=grid.dim)
            u[component] = a * rng.normal() * np.cos(_phase(grid, wavevector) + rng.uniform(0, 2 * np.pi))
        theta = init.theta0 * (1.0 + 0.5 * random_positive_density(grid, rng, floor=0.0).values / 4.0)
    return rho, u, theta


def initial_state(config: RunConfig) -> SystemState:
    """Build (ρ₀, λ₀, θ₀); λ₀ is the L² projection of the sampled velocity onto X_N."""
    grid = Grid(config.grid.dim, config.grid.points, config.grid.length)
    basis = build_basis(grid, config.numerics.N)
    rho, u, theta = _preset_fields(config, grid)
    u = u.copy()
    for term in config.initial.terms:
        values = _term_values(grid, term)
        if term.field == "rho":
            rho = rho + values
        elif term.field == "theta":
            theta = theta + values
        else:
            component = int(term.field[1])
            if component >= grid.dim:
                raise ConfigError(f"velocity component {term.field} does not exist in {grid.dim}D")
            u[component] = u[component] + values

    if rho.min() < config.initial.nu:
        raise ConfigError(f"initial density minimum {rho.min():.4g} below nu={config.initial.nu}")
    if theta.min() <= 0:
        raise ConfigError(f"initial temperature must be positive, minimum is {theta.min():.4g}")
    velocity = project(VectorField.from_arrays(grid, u), basis)
    return SystemState(ScalarField(grid, rho), velocity, ScalarField(grid, theta), 0.0)
