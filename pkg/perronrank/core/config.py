from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict
from typing import List


class Settings(BaseSettings):
    """Toolkit settings with environment variable support (prefix ``RANK_``)."""

    model_config = SettingsConfigDict(
        env_prefix="RANK_",
        env_file=".env",
        case_sensitive=False,
        extra="ignore",
    )

    # App Configuration
    app_name: str = "perronrank"
    debug: bool = False
    version: str = "1.0.0"

    # Logging
    log_level: str = Field(default="WARNING", description="Root level for structlog output")
    log_json: bool = False

    # Reproducibility; RANK_SEED supplies the CLI default seed
    seed: int = Field(default=0, ge=0)

    # Solver defaults
    solver_tol: float = Field(default=1e-12, gt=0)
    solver_max_iter: int = Field(default=10000, ge=1)

    # Numerical thresholds
    overflow_threshold: float = Field(default=700.0, gt=0)
    skew_tol: float = Field(default=1e-12, gt=0)
    membership_tol: float = Field(default=1e-9, gt=0)
    tropical_tol: float = Field(default=1e-9, gt=0)

    # Recovery lab
    default_k_grid: str = "0,0.01,0.1,0.5,1,2,5,10,100,inf"
    max_workers: int = Field(default=4, ge=1)

    def k_grid_labels(self) -> List[str]:
        """Split the configured default k grid into its labels."""
        return [item.strip() for item in self.default_k_grid.split(",") if item.strip()]


# Global settings instance
settings = Settings()


def get_settings() -> Settings:
    """Get toolkit settings."""
    return settings
