"""Fixed-width summary of the terminal diagnostics of every run below a directory."""
import json
import math
from pathlib import Path

from nsfg.core.errors import ConfigError
from nsfg.harness.io import read_csv
from nsfg.harness.runner import CSV_NAME, MANIFEST_NAME

REPORT_COLUMNS = ("t", "E_total", "bd_entropy", "mv_n", "min_rho", "min_theta", "res_energy")


def collect_runs(root: Path) -> list[tuple[str, str, dict[str, float]]]:
    """(run name, status, last CSV row) for every run directory below ``root``."""
    root = Path(root)
    if not root.is_dir():
        raise ConfigError(f"{root} is not a directory")
    runs = []
    for csv_path in sorted(root.rglob(CSV_NAME)):
        rows = read_csv(csv_path)
        status = "unknown"
        manifest = csv_path.parent / MANIFEST_NAME
        if manifest.exists():
            status = json.loads(manifest.read_text(encoding="utf-8")).get("status", "unknown")
        name = str(csv_path.parent.relative_to(root)) or "."
        runs.append((name, status, rows[-1] if rows else {}))
    return runs


def _cell(value: float) -> str:
    return f"{'nan':>14}" if value is None or math.isnan(value) else f"{value:>14.6e}"


def render_report(root: Path) -> str:
    runs = collect_runs(root)
    if not runs:
        return f"no runs found below {root}"
    width = max(len("run"), *(len(name) for name, _, _ in runs))
    header = f"{'run':<{width}}  {'status':<8}" + "".join(f"{c:>14}" for c in REPORT_COLUMNS)
    lines = [header, "-" * len(header)]
    for name, status, last in runs:
        cells = "".join(_cell(last.get(c, math.nan)) for c in REPORT_COLUMNS)
        lines.append(f"{name:<{width}}  {status:<8}{cells}")
    return "\n".join(lines)
