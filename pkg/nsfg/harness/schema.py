"""YAML run configuration validated by pydantic."""
import math
from pathlib import Path
from typing import Any, Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator

from nsfg.core.errors import ConfigError
from nsfg.models import RegularizationParams

Preset = Literal["equilibrium", "density-bump", "shear", "hot-spot", "drag-only", "random"]
TermField = Literal["rho", "u0", "u1", "u2", "theta"]


class _Section(BaseModel):
    model_config = ConfigDict(extra="forbid")


class GridConfig(_Section):
    dim: int = Field(default=1, ge=1, le=3)
    points: int = Field(default=32, ge=8)
    length: float = Field(default=2.0 * math.pi, gt=0)

    @field_validator("points")
    @classmethod
    def _even(cls, value: int) -> int:
        if value % 2:
            raise ValueError("points per axis must be even")
        return value


class NumericsConfig(_Section):
    N: int = Field(default=8, ge=1)
    dt: float = Field(default=1e-4, gt=0)
    t_end: float = Field(default=1e-2, gt=0)
    momentum_scheme: Literal["rk2", "picard"] = "rk2"
    transport_scheme: Literal["imex", "strang"] = "imex"
    picard_tol: float = Field(default=1e-10, gt=0)
    picard_max_iter: int = Field(default=50, ge=1)
    check_stability: bool = True

    @property
    def steps(self) -> int:
        return max(1, int(round(self.t_end / self.dt)))


class TrigTerm(_Section):
    """amplitude · cos(k·x) or sin(k·x) added to one initial field."""

    field: TermField
    amplitude: float
    wavevector: list[int]
    kind: Literal["cos", "sin"] = "cos"


class InitialConfig(_Section):
    preset: Preset = "equilibrium"
    amplitude: float = 0.1
    wavenumber: int = Field(default=1, ge=1)
    nu: float = Field(default=0.5, gt=0)  # required lower bound on ρ₀
    theta0: float = Field(default=1.0, gt=0)
    seed: int = 0
    terms: list[TrigTerm] = Field(default_factory=list)


class DiagnosticsConfig(_Section):
    cadence: int = Field(default=1, ge=1)
    n_cutoff: float = Field(default=10.0, ge=0)
    m_cutoff: float = Field(default=10.0, gt=0)
    K_cutoff: float = Field(default=10.0, gt=0)
    h_function: Literal["reciprocal", "power", "ratio", "unit"] = "unit"
    h_omega: float = Field(default=0.5, gt=0)
    delta: float = Field(default=0.5, gt=0, lt=2)
    young_constant: float = Field(default=1.0, gt=0)


class OutputConfig(_Section):
    directory: Optional[str] = None
    name: str = "run"
    snapshot_every: int = Field(default=0, ge=0)


class RunConfig(_Section):
    grid: GridConfig = Field(default_factory=GridConfig)
    numerics: NumericsConfig = Field(default_factory=NumericsConfig)
    params: RegularizationParams = Field(default_factory=RegularizationParams)
    initial: InitialConfig = Field(default_factory=InitialConfig)
    diagnostics: DiagnosticsConfig = Field(default_factory=DiagnosticsConfig)
    output: OutputConfig = Field(default_factory=OutputConfig)


def _format_errors(exc: ValidationError) -> list[str]:
    return [f"{'.'.join(str(p) for p in err['loc']) or '<root>'}: {err['msg']}" for err in exc.errors()]


def parse_config(data: Any) -> RunConfig:
    """Validate a mapping; every schema violation is listed in the raised ConfigError."""
    if data is None:
        data = {}
    if not isinstance(data, dict):
        raise ConfigError("run configuration must be a mapping")
    try:
        return RunConfig.model_validate(data)
    except ValidationError as exc:
        raise ConfigError("invalid run configuration:\n  " + "\n  ".join(_format_errors(exc))) from exc


def load_config(path: str | Path) -> RunConfig:
    from ruamel.yaml import YAML
    from ruamel.yaml.error import YAMLError

    yaml = YAML(typ="safe")
    source = Path(path)
    try:
        with source.open("r", encoding="utf-8") as fh:
            data = yaml.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read {source}: {exc}") from exc
    except YAMLError as exc:
        raise ConfigError(f"malformed YAML in {source}: {exc}") from exc
    return parse_config(data)


def dump_config(config: RunConfig, path: str | Path) -> None:
    from ruamel.yaml import YAML

    yaml = YAML(typ="safe")
    yaml.default_flow_style = False
    with Path(path).open("w", encoding="utf-8") as fh:
        yaml.dump(config.model_dump(mode="json"), fh)


SWEEP_AXES: dict[str, tuple[str, str]] = {
    "eps": ("params", "eps"),
    "kappa_q": ("params", "kappa_q"),
    "r0": ("params", "r0"),
    "r1": ("params", "r1"),
    "N": ("numerics", "N"),
    "dt": ("numerics", "dt"),
    "n_cutoff": ("diagnostics", "n_cutoff"),
    "K_cutoff": ("diagnostics", "K_cutoff"),
    "m_cutoff": ("diagnostics", "m_cutoff"),
}


def with_axis(config: RunConfig, axis: str, value: float) -> RunConfig:
    """Copy of ``config`` with one sweep axis replaced, revalidated."""
    if axis not in SWEEP_AXES:
        raise ConfigError(f"unknown sweep axis {axis!r}; choose from {', '.join(SWEEP_AXES)}")
    section, key = SWEEP_AXES[axis]
    data = config.model_dump(mode="json")
    data[section][key] = int(value) if axis == "N" else float(value)
    return parse_config(data)
