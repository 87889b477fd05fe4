"""
Configuration settings for CoPart.
Environment-driven configuration with reproducible defaults.
"""
from pathlib import Path
from typing import Optional
from pydantic_settings import BaseSettings
from pydantic import Field
from functools import lru_cache


PACKAGE_DIR = Path(__file__).resolve().parent.parent


class Settings(BaseSettings):
    """Application settings loaded from environment variables"""

    # Application Info
    APP_NAME: str = "CoPart - Cache Partitioning and Task Co-Allocation"
    APP_VERSION: str = "1.0.0"
    APP_DESCRIPTION: str = "Co-optimization of shared-cache partitioning and partitioned task allocation for hard real-time multicores"

    # Server Configuration
    HOST: str = Field(default="0.0.0.0", description="Service bind address")
    PORT: int = Field(default=8000, description="Service port")
    DEBUG: bool = Field(default=False)
    LOG_LEVEL: str = Field(default="INFO")
    LOG_TO_FILE: bool = Field(default=False)
    LOG_DIR: str = Field(default="./logs")

    # Storage
    DATA_DIR: str = Field(default="./data", description="Task-set repository root")
    OUTPUT_DIR: str = Field(default="./results", description="Experiment output root")
    PROFILE_DIR: Optional[str] = Field(default=None, description="Benchmark slowdown curve fixtures")

    # Time base
    TICK_NS: int = Field(default=1000, ge=1)  # 1 tick = 1 us
    TICKS_PER_MS: int = Field(default=1000, ge=1)

    # Experiment defaults
    DEFAULT_SEED: int = Field(default=42, ge=0)
    SETS_PER_POINT: int = Field(default=20, ge=1)
    TASKS_PER_SET: int = Field(default=40, ge=1)
    TIMEOUT_S: float = Field(default=300.0, gt=0)
    JOBS: int = Field(default=1, ge=1)

    # Analysis
    ANALYSIS_CACHE_SIZE: int = Field(default=65536, ge=0)

    # Baselines
    KMEANS_MAX_ITER: int = Field(default=100, ge=1)
    KMEANS_SEED: int = Field(default=0, ge=0)
    PDPA_DELTA: int = Field(default=50, ge=0, le=100)

    # Generator
    UTILIZATION_MAX_RETRIES: int = Field(default=1000, ge=1)

    # Oracle
    SIM_HORIZON_CAP: int = Field(default=10_000_000, ge=1)
    ORACLE_MAX_TASKS: int = Field(default=8, ge=1)
    ORACLE_MAX_CORES: int = Field(default=3, ge=1)
    ORACLE_MAX_PARTITIONS: int = Field(default=6, ge=1)

    model_config = {
        "env_file": ".env",
        "env_file_encoding": "utf-8",
        "case_sensitive": True,
        "extra": "ignore",
    }

    def is_production(self) -> bool:
        """Check if running in production mode"""
        return not self.DEBUG

    def profile_dir(self) -> Path:
        """Directory holding the benchmark slowdown curves"""
        if self.PROFILE_DIR:
            return Path(self.PROFILE_DIR)
        return PACKAGE_DIR / "data" / "profiles"

    def output_path(self, *parts: str) -> Path:
        """Path below the experiment output root"""
        return Path(self.OUTPUT_DIR).joinpath(*parts)


@lru_cache()
def get_settings() -> Settings:
    """Get cached settings instance"""
    return Settings()


# Global settings instance
settings = get_settings()
