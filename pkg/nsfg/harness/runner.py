"""Time loop of one run: transport, then momentum, then thermal, with diagnostics at cadence."""
import logging
import math
import os
import platform
import time
from collections import deque
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path
from typing import Optional

import psutil
from pydantic import BaseModel, Field

from nsfg import __version__
from nsfg.config import settings
from nsfg.core import metrics
from nsfg.core.errors import NonFiniteFieldError, NSFGError, StabilityError
from nsfg.core.logging import new_run_id
from nsfg.diagnostics import (
    FunctionalRecord,
    bd_entropy,
    bd_identity_residual,
    energy,
    energy_dissipation_residual,
    mv_functional,
    positivity_and_mass,
)
from nsfg.harness.io import sha256_file, write_csv, write_snapshot
from nsfg.harness.presets import initial_state
from nsfg.harness.schema import DiagnosticsConfig, RunConfig, dump_config
from nsfg.models import RegularizationParams, SystemState
from nsfg.momentum import check_stability, step_velocity
from nsfg.thermal import H_FAMILIES, HeatLaw, HFunction, renormalized_residual, step_temperature
from nsfg.transport import step_density

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2

MANIFEST_NAME = "manifest.json"
CSV_NAME = "diagnostics.csv"
CONFIG_NAME = "config.yaml"


class RunManifest(BaseModel):
    run_id: str
    code_version: str = __version__
    config: dict
    started_at: str
    finished_at: Optional[str] = None
    status: str = "running"
    termination_reason: Optional[str] = None
    steps: int = 0
    host: dict = Field(default_factory=dict)
    files: dict[str, str] = Field(default_factory=dict)


@dataclass
class RunResult:
    exit_code: int
    directory: Path
    records: list[FunctionalRecord] = field(default_factory=list)
    final_state: Optional[SystemState] = None
    reason: Optional[str] = None


def _now() -> str:
    return datetime.now(tz=timezone.utc).isoformat()


def _host_info() -> dict:
    memory = psutil.virtual_memory()
    return {
        "platform": platform.platform(),
        "python": platform.python_version(),
        "logical_cpus": psutil.cpu_count(logical=True),
        "total_memory_bytes": memory.total,
        "fft_workers": settings.fft_workers,
    }


def _write_manifest(directory: Path, manifest: RunManifest) -> None:
    (directory / MANIFEST_NAME).write_text(manifest.model_dump_json(indent=2), encoding="utf-8")


def _inventory(directory: Path) -> dict[str, str]:
    return {
        str(path.relative_to(directory)): sha256_file(path)
        for path in sorted(directory.rglob("*"))
        if path.is_file() and path.name != MANIFEST_NAME
    }


def resolve_h(diagnostics: DiagnosticsConfig) -> HFunction:
    family = H_FAMILIES[diagnostics.h_function]
    return family(diagnostics.h_omega) if diagnostics.h_function in ("power", "ratio") else family()


def advance(state: SystemState, config: RunConfig, law: HeatLaw) -> SystemState:
    """One full step of the splitting."""
    params = config.params
    numerics = config.numerics
    dt = numerics.dt
    if numerics.check_stability:
        check_stability(state, params, dt)

    started = time.perf_counter()
    transport = step_density(state.rho, state.u, params.eps, dt, numerics.transport_scheme)
    metrics.step_duration_seconds.labels(stage="transport").observe(time.perf_counter() - started)
    metrics.steps_total.labels(stage="transport").inc()

    started = time.perf_counter()
    velocity = step_velocity(
        state,
        params,
        dt,
        rho_next=transport.rho_new,
        scheme=numerics.momentum_scheme,
        tol=numerics.picard_tol,
        max_iter=numerics.picard_max_iter,
    )
    metrics.step_duration_seconds.labels(stage="momentum").observe(time.perf_counter() - started)
    metrics.steps_total.labels(stage="momentum").inc()

    started = time.perf_counter()
    thermal = step_temperature(
        state.theta,
        state.rho,
        state.u,
        law,
        params.eps_for("mass"),
        dt,
        rho_next=transport.rho_new,
        eps_sink=params.eps_for("sink"),
        tol=numerics.picard_tol,
        max_iter=numerics.picard_max_iter,
    )
    metrics.step_duration_seconds.labels(stage="thermal").observe(time.perf_counter() - started)
    metrics.steps_total.labels(stage="thermal").inc()
    metrics.thermal_picard_iterations.observe(thermal.picard_iterations)
    if thermal.clipped_mass:
        metrics.thermal_clipped_mass.inc(thermal.clipped_mass)
    return state.advanced(transport.rho_new, velocity, thermal.theta_new, dt)


def build_record(
    window: list[SystemState],
    index: int,
    params: RegularizationParams,
    diagnostics: DiagnosticsConfig,
    law: HeatLaw,
    h: HFunction,
) -> FunctionalRecord:
    """Diagnostics of ``window[index]``; residuals use the neighbouring states of the window."""
    state = window[index]
    parts = energy(state, params)
    monitor = positivity_and_mass(state)
    res_energy = res_bd = res_thermal = math.nan
    if len(window) > 1:
        res_energy = energy_dissipation_residual(window, params, index)
        if params.eps > 0:
            res_bd = bd_identity_residual(window, params, index)
        pair = (index, index + 1) if index + 1 < len(window) else (index - 1, index)
        res_thermal = renormalized_residual(window[pair[0]], window[pair[1]], h, law, params)
    record = FunctionalRecord(
        t=state.t,
        mass=monitor.mass,
        E_total=parts.total,
        E_kinetic=parts.kinetic,
        E_cold=parts.cold,
        E_capillary=parts.capillary,
        E_hyper=parts.hyper,
        E_internal=parts.internal,
        bd_entropy=bd_entropy(state, params),
        mv_n=mv_functional(state, diagnostics.n_cutoff, diagnostics.m_cutoff, diagnostics.K_cutoff),
        min_rho=monitor.min_rho,
        min_theta=monitor.min_theta,
        res_energy=res_energy,
        res_bd=res_bd,
        res_thermal=res_thermal,
    )
    metrics.min_rho.set(record.min_rho)
    metrics.min_theta.set(record.min_theta)
    metrics.total_energy.set(record.E_total)
    return record


def run_directory(config: RunConfig) -> Path:
    root = Path(config.output.directory or settings.output_root)
    return root if config.output.directory else root / config.output.name


def run(config: RunConfig, directory: Optional[Path] = None) -> RunResult:
    """Execute one run and write its artifacts.

    Returns:
        RunResult with exit code 0 on success and 1 on any numerical failure.
        Failures leave a finalized manifest naming the reason.
    """
    directory = Path(directory) if directory is not None else run_directory(config)
    directory.mkdir(parents=True, exist_ok=True)
    run_id = new_run_id()
    manifest = RunManifest(
        run_id=run_id, config=config.model_dump(mode="json"), started_at=_now(), host=_host_info()
    )
    dump_config(config, directory / CONFIG_NAME)
    _write_manifest(directory, manifest)

    law = HeatLaw.from_params(config.params)
    h = resolve_h(config.diagnostics)
    cadence = config.diagnostics.cadence
    steps = config.numerics.steps
    records: list[FunctionalRecord] = []
    logger.info(
        "Run started",
        extra={"run_id": run_id, "directory": str(directory), "steps": steps, "dt": config.numerics.dt},
    )

    state = initial_state(config)
    window: deque[SystemState] = deque([state], maxlen=3)
    step = 0
    exit_code, reason = EXIT_OK, None
    try:
        for step in range(1, steps + 1):
            state = advance(state, config, law)
            window.append(state)
            # the state before the newest one now has both neighbours
            recorded_step = step - 1
            if recorded_step % cadence == 0:
                index = len(window) - 2
                records.append(build_record(list(window), index, config.params, config.diagnostics, law, h))
                logger.info(
                    "Record",
                    extra={"run_id": run_id, "step": recorded_step, "t": records[-1].t, "E_total": records[-1].E_total},
                )
            if config.output.snapshot_every and step % config.output.snapshot_every == 0:
                write_snapshot(directory / f"step_{step:06d}.nsfg", state)
        if steps % cadence == 0:
            records.append(build_record(list(window), len(window) - 1, config.params, config.diagnostics, law, h))
        write_snapshot(directory / "final.nsfg", state)
    except StabilityError as exc:
        exit_code, reason = EXIT_FAILURE, f"stability: {exc.term}: {exc}"
        logger.error("Stability bound violated", extra={"run_id": run_id, "step": step, "term": exc.term})
    except NonFiniteFieldError as exc:
        exit_code, reason = EXIT_FAILURE, f"non-finite state: {exc}"
        write_snapshot(directory / "crash.nsfg", state)
        logger.error("Non-finite state", extra={"run_id": run_id, "step": step}, exc_info=True)
    except NSFGError as exc:
        exit_code, reason = EXIT_FAILURE, f"{type(exc).__name__}: {exc}"
        logger.error("Run failed", extra={"run_id": run_id, "step": step}, exc_info=True)

    write_csv(directory / CSV_NAME, records)
    if settings.metrics_file:
        metrics_path = Path(settings.metrics_file)
        metrics.export(str(metrics_path if metrics_path.is_absolute() else directory / metrics_path))

    status = "ok" if exit_code == EXIT_OK else "failed"
    metrics.runs_total.labels(status=status).inc()
    manifest = manifest.model_copy(
        update={
            "finished_at": _now(),
            "status": status,
            "termination_reason": reason or "completed",
            "steps": step,
            "host": {**manifest.host, "rss_bytes": psutil.Process(os.getpid()).memory_info().rss},
            "files": _inventory(directory),
        }
    )
    _write_manifest(directory, manifest)
    logger.info("Run finished", extra={"run_id": run_id, "status": status, "steps": step})
    return RunResult(exit_code, directory, records, state, reason)
