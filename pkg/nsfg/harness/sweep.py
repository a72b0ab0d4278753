"""One-parameter sweeps with log-log convergence fits."""
import csv
import json
import logging
import math
from concurrent.futures import ProcessPoolExecutor
from concurrent.futures.process import BrokenProcessPool
from pathlib import Path
from typing import Optional, Sequence

import numpy as np
from pydantic import BaseModel

from nsfg.config import settings
from nsfg.core.errors import ConfigError, NSFGError
from nsfg.fields import integrate
from nsfg.harness.runner import EXIT_FAILURE, EXIT_OK, run
from nsfg.harness.schema import RunConfig, parse_config, with_axis

logger = logging.getLogger(__name__)

SUMMARY_COLUMNS = (
    "E_total",
    "E_kinetic",
    "E_cold",
    "E_capillary",
    "E_hyper",
    "E_internal",
    "bd_entropy",
    "mv_n",
    "eps_weighted",
    "res_energy",
    "res_bd",
    "res_thermal",
)


class SweepRow(BaseModel):
    value: float
    exit_code: int
    reason: Optional[str] = None
    terminal: dict[str, float] = {}


class SweepResult(BaseModel):
    axis: str
    rows: list[SweepRow]
    slopes: dict[str, float]
    exit_code: int


def _child(config_data: dict, axis: str, value: float, directory: str) -> dict:
    """Run one sweep member; top-level so worker processes can import it."""
    config = with_axis(parse_config(config_data), axis, value)
    result = run(config, Path(directory))
    terminal: dict[str, float] = {}
    if result.records:
        last = result.records[-1]
        terminal = {name: getattr(last, name) for name in SUMMARY_COLUMNS if hasattr(last, name)}
        # residuals are only meaningful where a centered difference exists
        interior = [r for r in result.records if not math.isnan(r.res_energy)]
        if len(interior) > 2:
            middle = interior[len(interior) // 2]
            for name in ("res_energy", "res_bd", "res_thermal"):
                terminal[name] = getattr(middle, name)
    if result.final_state is not None and result.records:
        theta_mass = integrate(result.final_state.theta)
        terminal["eps_weighted"] = (
            terminal["E_cold"] + terminal["E_hyper"] + config.params.eps_for("mass") * theta_mass
        )
    return SweepRow(value=value, exit_code=result.exit_code, reason=result.reason, terminal=terminal).model_dump()


def fit_slope(xs: Sequence[float], ys: Sequence[float]) -> float:
    """Least-squares slope of log|y| against log x; nan with fewer than two usable points."""
    pairs = [(x, abs(y)) for x, y in zip(xs, ys) if x > 0 and math.isfinite(y) and y != 0]
    if len(pairs) < 2:
        return math.nan
    logs = np.log(np.array(pairs))
    slope, _ = np.polyfit(logs[:, 0], logs[:, 1], 1)
    return float(slope)


def sweep(config: RunConfig, axis: str, values: Sequence[float], directory: Path) -> SweepResult:
    if not values:
        raise ConfigError("a sweep needs at least one value")
    with_axis(config, axis, values[0])  # rejects unknown axes before any run starts
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    data = config.model_dump(mode="json")
    jobs = [(data, axis, float(v), str(directory / f"{axis}_{i:02d}")) for i, v in enumerate(values)]

    rows: list[SweepRow] = []
    if settings.sweep_workers > 1:
        with ProcessPoolExecutor(max_workers=settings.sweep_workers) as pool:
            futures = [pool.submit(_child, *job) for job in jobs]
            for job, future in zip(jobs, futures):
                rows.append(_collect(job, future.result))
    else:
        for job in jobs:
            rows.append(_collect(job, lambda job=job: _child(*job)))

    ok = [r for r in rows if r.exit_code == EXIT_OK]
    slopes = {
        name: fit_slope([r.value for r in ok], [r.terminal.get(name, math.nan) for r in ok])
        for name in SUMMARY_COLUMNS
    }
    exit_code = EXIT_OK if len(ok) == len(rows) else EXIT_FAILURE
    result = SweepResult(axis=axis, rows=rows, slopes=slopes, exit_code=exit_code)
    _write_summary(directory, result)
    logger.info("Sweep finished", extra={"axis": axis, "runs": len(rows), "failed": len(rows) - len(ok)})
    return result


def _collect(job: tuple, call) -> SweepRow:
    try:
        return SweepRow.model_validate(call())
    except (NSFGError, BrokenProcessPool) as exc:
        logger.error("Sweep member failed", extra={"axis": job[1], "value": job[2]}, exc_info=True)
        return SweepRow(value=job[2], exit_code=EXIT_FAILURE, reason=f"{type(exc).__name__}: {exc}")
    except Exception:
        logger.exception("Unexpected error in sweep member", extra={"axis": job[1], "value": job[2]})
        raise


def _write_summary(directory: Path, result: SweepResult) -> None:
    with (directory / "sweep.csv").open("w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow((result.axis, "exit_code") + SUMMARY_COLUMNS)
        for row in result.rows:
            writer.writerow(
                ["%.17g" % row.value, row.exit_code]
                + ["%.17g" % row.terminal.get(name, math.nan) for name in SUMMARY_COLUMNS]
            )
    (directory / "sweep.json").write_text(json.dumps(result.model_dump(), indent=2, allow_nan=True), encoding="utf-8")
