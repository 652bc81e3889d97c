"""
Configuration management for the super Jordan type toolkit.
Loads settings from environment variables and .env file.
"""
import os
from pathlib import Path

# Handle both pydantic v1 and v2 styles
try:
    from pydantic_settings import BaseSettings
except ImportError:
    from pydantic import BaseSettings

from pydantic import Field

# Load .env file
from dotenv import load_dotenv

# Determine base directory
BASE_DIR = Path(__file__).parent.parent

load_dotenv(BASE_DIR / ".env")


class CertificateSettings(BaseSettings):
    """Caps for the minors / Groebner rank certificate."""
    max_minors: int = Field(default=20000, alias="SJT_MAX_MINORS")
    max_spairs: int = Field(default=5000, alias="SJT_MAX_SPAIRS")
    max_basis_size: int = Field(default=2000, alias="SJT_MAX_BASIS_SIZE")
    max_basis_degree: int = Field(default=40, alias="SJT_MAX_BASIS_DEGREE")

    class Config:
        env_file = ".env"
        extra = "ignore"


class SamplingSettings(BaseSettings):
    """Seeded sampling of odd points."""
    generic_rank_samples: int = Field(default=50, alias="SJT_GENERIC_RANK_SAMPLES")
    samples: int = Field(default=200, alias="SJT_SAMPLES")
    fallback_samples: int = Field(default=1000, alias="SJT_FALLBACK_SAMPLES")
    seed: int = Field(default=0, alias="SJT_SEED")
    coord_range: int = Field(default=17, alias="SJT_COORD_RANGE")
    workers: int = Field(default=1, alias="SJT_WORKERS")
    witness_box: int = Field(default=3, alias="SJT_WITNESS_BOX")

    class Config:
        env_file = ".env"
        extra = "ignore"


class AnalysisSettings(BaseSettings):
    """Endotriviality, indecomposability and bundle-window knobs."""
    endotrivial_direct_max_dim: int = Field(default=4096, alias="SJT_ENDOTRIVIAL_DIRECT_MAX_DIM")
    idempotent_attempts: int = Field(default=24, alias="SJT_IDEMPOTENT_ATTEMPTS")
    window_max_degree: int = Field(default=8, alias="SJT_WINDOW_MAX_DEGREE")

    class Config:
        env_file = ".env"
        extra = "ignore"


class Settings:
    """Main settings - plain class holding the pydantic groups and filesystem paths."""

    def __init__(self):
        self.app_name = "superjordan"
        self.version = "0.3.0"
        self.report_schema_version = 1
        self.log_level = os.getenv("SJT_LOG_LEVEL", "INFO").upper()

        # Data paths - computed from base directory
        self.data_dir = BASE_DIR / "data"
        self.fixtures_dir = self.data_dir / "fixtures"
        self.results_dir = self.data_dir / "evaluation_results"
        self.logs_dir = BASE_DIR / "logs"

        # Sub-settings (pydantic-based)
        self.certificate = CertificateSettings()
        self.sampling = SamplingSettings()
        self.analysis = AnalysisSettings()

        self.logs_dir.mkdir(parents=True, exist_ok=True)


# Global settings instance
settings = Settings()
