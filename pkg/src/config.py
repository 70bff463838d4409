"""
Environment-driven settings
"""

import os
from typing import Optional

from dotenv import load_dotenv
from pydantic import BaseModel, Field, field_validator

load_dotenv()


class Settings(BaseModel):
    """Process-wide settings read from HEDGEMAP_* variables."""

    seed: int = Field(default=0, ge=0)
    log_level: str = "INFO"
    log_file: Optional[str] = None
    json_logs: bool = False

    @field_validator("log_level")
    @classmethod
    def _upper_level(cls, value: str) -> str:
        level = value.upper()
        if level not in {"TRACE", "DEBUG", "INFO", "SUCCESS", "WARNING", "ERROR", "CRITICAL"}:
            raise ValueError(f"unknown log level: {value}")
        return level


def load_settings() -> Settings:
    """Build settings from the environment (and a .env file if present)."""
    return Settings(
        seed=int(os.getenv("HEDGEMAP_SEED", "0")),
        log_level=os.getenv("HEDGEMAP_LOG_LEVEL", "INFO"),
        log_file=os.getenv("HEDGEMAP_LOG_FILE") or None,
        json_logs=os.getenv("HEDGEMAP_JSON_LOGS", "false").lower() in {"1", "true", "yes"},
    )
