from pydantic_settings import BaseSettings
from typing import Optional


class Settings(BaseSettings):
    """Runtime settings loaded from environment variables or .env file."""

    # App
    app_name: str = "nsfg"
    log_level: str = "INFO"

    # Numerics
    fft_workers: int = 1  # >1 is reproducible only for a fixed worker count
    sweep_workers: int = 1

    # Artifacts
    output_root: str = "runs"
    metrics_file: Optional[str] = None

    class Config:
        env_prefix = "NSFG_"
        env_file = ".env"
        env_file_encoding = "utf-8"


settings = Settings()
