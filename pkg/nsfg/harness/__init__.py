from nsfg.harness.runner import RunManifest, RunResult, run
from nsfg.harness.schema import RunConfig, load_config, parse_config

__all__ = ["RunConfig", "RunManifest", "RunResult", "load_config", "parse_config", "run"]
