"""
Configuration management for the secure-domination digraph laboratory.

This module handles all configuration settings, environment variables,
and application constants such as search caps and CLI spellings.
"""

from functools import lru_cache
from typing import Dict, List

from pydantic import field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Application settings with environment variable support."""

    model_config = SettingsConfigDict(
        env_file=".env",
        env_prefix="SECDOM_",
        case_sensitive=True,
        extra="ignore",
    )

    # Application
    APP_NAME: str = "Secure Domination Digraph Lab"
    VERSION: str = "1.0.0"
    ENVIRONMENT: str = "development"

    # Logging & metrics
    LOG_LEVEL: str = "WARNING"
    LOG_FORMAT: str = "json"
    METRICS_ENABLED: bool = True

    # Exact search caps
    SIZE_CAP: int = 26
    ORACLE_CAP: int = 20
    PATH_SEARCH_CAP: int = 20
    ORIENTATION_EDGE_CAP: int = 22
    EXHAUSTIVE_HUNT_MAX_N: int = 5
    CLOSED_FORM_CONFIRM_MAX_N: int = 12
    THREAD_HINT: int = 1

    # Random corpora
    DEFAULT_ARC_PROB: float = 0.5
    HUNT_MAX_ATTEMPTS_FACTOR: int = 50

    @field_validator("ENVIRONMENT")
    @classmethod
    def validate_environment(cls, v: str) -> str:
        """Validate environment setting."""
        if v not in ["development", "ci", "production"]:
            raise ValueError("Environment must be development, ci, or production")
        return v

    @field_validator("LOG_LEVEL")
    @classmethod
    def validate_log_level(cls, v: str) -> str:
        """Normalize and validate the log level name."""
        level = v.upper()
        if level not in ["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"]:
            raise ValueError(f"Unknown log level: {v}")
        return level

    @field_validator("LOG_FORMAT")
    @classmethod
    def validate_log_format(cls, v: str) -> str:
        if v not in ["json", "console"]:
            raise ValueError("Log format must be json or console")
        return v

    @field_validator(
        "SIZE_CAP",
        "ORACLE_CAP",
        "PATH_SEARCH_CAP",
        "ORIENTATION_EDGE_CAP",
        "EXHAUSTIVE_HUNT_MAX_N",
        "THREAD_HINT",
    )
    @classmethod
    def validate_positive(cls, v: int) -> int:
        if v < 1:
            raise ValueError("Caps and thread hints must be positive")
        return v

    @field_validator("DEFAULT_ARC_PROB")
    @classmethod
    def validate_probability(cls, v: float) -> float:
        if not 0.0 <= v <= 1.0:
            raise ValueError("Arc probability must lie in [0, 1]")
        return v


@lru_cache()
def get_settings() -> Settings:
    """Get cached settings instance."""
    return Settings()


# Global settings instance
settings = get_settings()


# CLI spellings of the computable parameters, keyed by ParamKind value
PARAM_ALIASES: Dict[str, List[str]] = {
    "gamma_plus": ["gamma+", "plus", "out"],
    "gamma_minus": ["gamma-", "minus", "in"],
    "gamma_s": ["gamma_s", "s", "sds"],
    "gamma_twin": ["gamma*", "twin", "star"],
    "gamma_so": ["gamma_so", "so", "sods"],
    "gamma_os": ["gamma_os", "os", "osds"],
    "gamma_oso": ["gamma_oso", "oso", "osods"],
    "gamma_iso": ["gamma_iso", "iso", "isods"],
}

# CLI spellings of the set kinds, keyed by SetKind value
SETKIND_ALIASES: Dict[str, List[str]] = {
    "out_dominating": ["out-dominating", "outdom", "out"],
    "in_dominating": ["in-dominating", "indom", "in"],
    "underlying_dominating": ["underlying-dominating", "dominating", "dom"],
    "twin_dominating": ["twin-dominating", "twin"],
    "sds": ["sds"],
    "sods": ["sods"],
    "osds": ["osds"],
    "osods": ["osods"],
    "isods": ["isods"],
}

# Generator families and the closed-form families exposed by the CLI
GENERATOR_FAMILIES = {
    "dipath": {"min_size": 1, "random": False},
    "dicycle": {"min_size": 3, "random": False},
    "transitive_tournament": {"min_size": 1, "random": False},
    "spider": {"min_size": 1, "random": False},
    "random_tournament": {"min_size": 1, "random": True},
    "random_digraph": {"min_size": 1, "random": True},
}

CLOSED_FORM_FAMILIES = ["path", "cycle", "spider", "transtour"]
