import os
from functools import lru_cache
from typing import Optional

from dotenv import load_dotenv
from pydantic import BaseModel, Field, field_validator

RESIDUE_INTERPRETATIONS = ("printed", "xi_power_r")


class Settings(BaseModel):
    log_level: str = "WARNING"
    residue_numerator: str = "printed"
    workers: int = Field(4, ge=1)
    series_order: int = Field(200, ge=0)
    corpus_bound: int = Field(9, ge=2)
    corpus_size: int = Field(120, ge=1)
    seed: int = 0
    catalog_path: Optional[str] = None
    progress: bool = False

    @field_validator("log_level")
    @classmethod
    def _upper(cls, value: str) -> str:
        return value.upper()

    @field_validator("residue_numerator")
    @classmethod
    def _interpretation(cls, value: str) -> str:
        if value not in RESIDUE_INTERPRETATIONS:
            raise ValueError(f"residue numerator must be one of {RESIDUE_INTERPRETATIONS}")
        return value


def _flag(value: str) -> bool:
    return value.strip().lower() in ("1", "true", "yes", "on")


def load_settings() -> Settings:
    """Read SINGMON_* variables from the environment (and a .env file if present)."""
    load_dotenv()
    return Settings(
        log_level=os.getenv("SINGMON_LOG_LEVEL", "WARNING"),
        residue_numerator=os.getenv("SINGMON_RESIDUE_NUMERATOR", "printed"),
        workers=int(os.getenv("SINGMON_WORKERS", "4")),
        series_order=int(os.getenv("SINGMON_SERIES_ORDER", "200")),
        corpus_bound=int(os.getenv("SINGMON_CORPUS_BOUND", "9")),
        corpus_size=int(os.getenv("SINGMON_CORPUS_SIZE", "120")),
        seed=int(os.getenv("SINGMON_SEED", "0")),
        catalog_path=os.getenv("SINGMON_CATALOG_PATH") or None,
        progress=_flag(os.getenv("SINGMON_PROGRESS", "off")),
    )


@lru_cache(maxsize=1)
def get_settings() -> Settings:
    return load_settings()
