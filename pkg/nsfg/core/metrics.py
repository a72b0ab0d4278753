from prometheus_client import REGISTRY, Counter, Gauge, Histogram, write_to_textfile

# --- Counters ---
steps_total = Counter(
    "nsfg_steps_total",
    "Total sub-steps executed",
    ["stage"]
)

runs_total = Counter(
    "nsfg_runs_total",
    "Total runs by outcome",
    ["status"]
)

# --- Histograms ---
step_duration_seconds = Histogram(
    "nsfg_step_duration_seconds",
    "Wall time of one sub-step in seconds",
    ["stage"],
    buckets=[1e-4, 5e-4, 1e-3, 5e-3, 0.01, 0.05, 0.1, 0.5, 1]
)

thermal_picard_iterations = Histogram(
    "nsfg_thermal_picard_iterations",
    "Conductivity fixed-point iterations per thermal step",
    buckets=[1, 2, 3, 5, 8, 13, 21, 34, 50]
)

# --- Gauges ---
min_rho = Gauge(
    "nsfg_min_rho",
    "Pointwise density minimum at the last record"
)

min_theta = Gauge(
    "nsfg_min_theta",
    "Pointwise temperature minimum at the last record"
)

total_energy = Gauge(
    "nsfg_total_energy",
    "Total energy at the last record"
)

thermal_clipped_mass = Gauge(
    "nsfg_thermal_clipped_mass",
    "Accumulated temperature undershoot mass removed by clipping"
)


def export(path: str) -> None:
    """Write the default registry in text exposition format."""
    write_to_textfile(path, REGISTRY)
