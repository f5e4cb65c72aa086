"""
Configuration settings loaded from environment variables.
Uses pydantic-settings for validation and type safety.
"""
from typing import Dict, List, Optional, Tuple
from pydantic import Field, field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Application settings loaded from environment variables or .env."""

    model_config = SettingsConfigDict(
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False,
        extra="ignore",
    )

    # Logging
    log_level: str = Field(default="INFO")
    log_dir: Optional[str] = Field(default=None)

    # Arithmetic bounds
    group_structure_max_q: int = Field(default=2 ** 14)
    rational_order_bound: int = Field(default=16)
    exhaustive_sqrt_max_q: int = Field(default=8192)

    # Census
    census_max_q: int = Field(default=61)
    census_count_every_curve: bool = Field(default=False)
    default_jobs: int = Field(default=1)

    # Randomized checks
    default_seed: int = Field(default=0)
    identity_samples: int = Field(default=1000)
    kubert_samples: int = Field(default=50)
    random_test_prime: int = Field(default=101)

    @field_validator("log_level")
    @classmethod
    def validate_log_level(cls, v):
        valid_levels = ["TRACE", "DEBUG", "INFO", "SUCCESS", "WARNING", "ERROR", "CRITICAL"]
        if v.upper() not in valid_levels:
            raise ValueError(f"Log level must be one of: {valid_levels}")
        return v.upper()

    @field_validator(
        "group_structure_max_q",
        "rational_order_bound",
        "exhaustive_sqrt_max_q",
        "census_max_q",
        "default_jobs",
        "identity_samples",
        "kubert_samples",
    )
    @classmethod
    def validate_positive(cls, v):
        if v < 1:
            raise ValueError("Bounds and counts must be positive")
        return v

    @field_validator("random_test_prime")
    @classmethod
    def validate_test_prime(cls, v):
        if v < 3 or v % 2 == 0:
            raise ValueError("Random test prime must be an odd prime")
        return v


# Global settings instance
settings = Settings()


class Constants:
    """Application constants."""

    # Orders q of the fields the census supports
    CENSUS_FIELDS: Tuple[int, ...] = (
        3, 5, 7, 9, 11, 13, 17, 19, 23, 25, 27, 29, 31, 37, 41, 43, 47, 59, 61
    )

    # Default moduli for extension fields, constant term first, monic
    DEFAULT_MODULI: Dict[Tuple[int, int], List[int]] = {
        (3, 2): [1, 0, 1],
        (5, 2): [2, 0, 1],
        (3, 3): [2, 2, 0, 1],
    }

    FAMILY_IDS = ["e1", "e2", "e2-alt", "full4", "e4", "e3", "fam3", "e5-general", "e5"]
    KUBERT_KINDS = ["e1", "e3", "e4"]
    OUTPUT_MODES = ["json", "table"]

    # Largest extension degree handled by the irreducibility search
    MAX_EXTENSION_DEGREE = 3


CENSUS_FIELDS = Constants.CENSUS_FIELDS
DEFAULT_MODULI = Constants.DEFAULT_MODULI
FAMILY_IDS = Constants.FAMILY_IDS
KUBERT_KINDS = Constants.KUBERT_KINDS
OUTPUT_MODES = Constants.OUTPUT_MODES
