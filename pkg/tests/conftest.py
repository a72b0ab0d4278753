import pytest
import os

os.environ.setdefault("NSFG_LOG_LEVEL", "WARNING")
os.environ["NSFG_FFT_WORKERS"] = "1"
os.environ["NSFG_SWEEP_WORKERS"] = "1"
os.environ.pop("NSFG_METRICS_FILE", None)

import numpy as np


@pytest.fixture
def grid1d():
    from nsfg.fields import Grid

    return Grid(1, 32)


@pytest.fixture
def basis1d(grid1d):
    from nsfg.basis import build_basis

    return build_basis(grid1d, 8)


@pytest.fixture
def make_state(grid1d, basis1d):
    """Factory for 1D states from sample arrays and a velocity array."""
    from nsfg.basis import project
    from nsfg.fields import ScalarField, VectorField
    from nsfg.models import SystemState

    def _make(rho=None, u=None, theta=None, t=0.0, grid=grid1d, basis=basis1d):
        shape = grid.shape
        rho = np.ones(shape) if rho is None else np.broadcast_to(rho, shape)
        theta = np.ones(shape) if theta is None else np.broadcast_to(theta, shape)
        u = np.zeros((grid.dim,) + shape) if u is None else np.reshape(u, (grid.dim,) + shape)
        velocity = project(VectorField.from_arrays(grid, u), basis)
        return SystemState(ScalarField(grid, rho), velocity, ScalarField(grid, theta), t)

    return _make


@pytest.fixture
def quiet_params():
    """Parameters with the stiff hyper term and the thermal sink switched off."""
    from nsfg.models import EpsOverrides, RegularizationParams

    return RegularizationParams(eps=1e-3, overrides=EpsOverrides(eps_hyper=1e-12, eps_sink=0.0))


@pytest.fixture
def base_config():
    """Small 1D run configuration as a plain mapping."""

    def _config(**sections):
        data = {
            "grid": {"dim": 1, "points": 32},
            "numerics": {"N": 8, "dt": 1e-3, "t_end": 5e-3},
            "params": {"eps": 1e-3, "overrides": {"eps_hyper": 1e-12, "eps_sink": 0.0}},
            "initial": {"preset": "equilibrium"},
            "diagnostics": {"cadence": 1},
        }
        for name, values in sections.items():
            data.setdefault(name, {}).update(values)
        return data

    return _config
