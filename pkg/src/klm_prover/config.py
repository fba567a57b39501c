"""Configuration management for the KLM prover."""

from typing import Optional

from dotenv import load_dotenv
from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict

from .shared.constants import DEFAULT_ORACLE_BOUND, ENGINE_DEFAULT, LOGIC_P

# Load environment variables from .env file
load_dotenv()


class Settings(BaseSettings):
    """Prover settings loaded from ``KLM_*`` environment variables."""

    model_config = SettingsConfigDict(
        env_prefix="KLM_",
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False,
        extra="ignore",
    )

    # Logging
    log_level: str = Field(default="WARNING", description="Root log level for the CLI")

    # Query defaults
    default_logic: str = Field(default=LOGIC_P, description="Logic used when none is given")
    default_engine: str = Field(
        default=ENGINE_DEFAULT, description="Engine used when none is given"
    )

    # Oracle
    oracle_bound: int = Field(
        default=DEFAULT_ORACLE_BOUND, ge=1, description="Oracle bound for C, CL and P"
    )
    oracle_bound_r: Optional[int] = Field(
        default=None, ge=1, description="Oracle bound for R; unset means the formula size"
    )

    # Reports
    record_traces: bool = Field(default=False, description="Collect rule applications by default")
    report_timings: bool = Field(
        default=False,
        description="Add wall-clock timings and a timestamp to reports",
    )


# Global settings instance
settings = Settings()


def get_settings() -> Settings:
    """Get the global settings instance.

    Returns:
        Settings instance
    """
    return settings
