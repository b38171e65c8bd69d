# config/settings.py
from functools import lru_cache
from typing import Literal

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class HesseSettings(BaseSettings):
    """Runtime defaults, overridable through HESSE_* environment variables or a .env file."""

    model_config = SettingsConfigDict(
        env_prefix="HESSE_",
        env_file=".env",
        env_file_encoding="utf-8",
        extra="ignore",
    )

    log_level: str = "INFO"
    output_format: Literal["human", "json"] = "human"
    seed: int = 1
    fuzz_trials: int = Field(default=1000, ge=1)
    sampled_quadruples: int = Field(default=1000, ge=1)
    retry_budget: int = Field(default=1000, ge=1)
    # ordered 4-tuples times forms
    scan_budget: int = Field(default=4_000_000, ge=1)
    rational_bound: int = Field(default=100, ge=1)
    workers: int = Field(default=1, ge=1)


@lru_cache
def get_settings() -> HesseSettings:
    return HesseSettings()
