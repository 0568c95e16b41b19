import os
import logging
from fractions import Fraction
from functools import lru_cache
from typing import List, Optional

from dotenv import load_dotenv
from pydantic import BaseModel, ConfigDict, field_validator

logger = logging.getLogger(__name__)

# Load environment variables
load_dotenv(dotenv_path=os.path.join(os.path.dirname(__file__), '.env'))


class Settings(BaseModel):
    """Runtime settings read from the environment."""
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    delta: Fraction = Fraction(3, 4)
    samples: int = 3
    max_rank: int = 3
    oracle_max_rank: int = 4
    enum_radius: Optional[int] = None
    tighten_limit: int = 4096
    log_level: str = "INFO"
    cors_origins: List[str] = ["*"]

    @field_validator("delta")
    @classmethod
    def _delta_in_range(cls, value: Fraction) -> Fraction:
        if not Fraction(1, 4) < value < 1:
            raise ValueError("delta must lie strictly between 1/4 and 1")
        return value

    @field_validator("samples", "max_rank", "oracle_max_rank", "tighten_limit")
    @classmethod
    def _positive(cls, value: int) -> int:
        if value < 1:
            raise ValueError("must be a positive integer")
        return value

    @field_validator("enum_radius")
    @classmethod
    def _radius(cls, value: Optional[int]) -> Optional[int]:
        if value is not None and value < 1:
            raise ValueError("must be a positive integer")
        return value


ENV_VARS = {
    "delta": "PARAMLAT_DELTA",
    "samples": "PARAMLAT_SAMPLES",
    "max_rank": "PARAMLAT_MAX_RANK",
    "oracle_max_rank": "PARAMLAT_ORACLE_MAX_RANK",
    "enum_radius": "PARAMLAT_ENUM_RADIUS",
    "tighten_limit": "PARAMLAT_TIGHTEN_LIMIT",
    "log_level": "PARAMLAT_LOG_LEVEL",
    "cors_origins": "PARAMLAT_CORS_ORIGINS",
}


def _read_env() -> dict:
    values = {}
    for field, var in ENV_VARS.items():
        raw = os.getenv(var)
        if raw is None or raw.strip() == "":
            continue
        raw = raw.strip()
        if field == "delta":
            values[field] = Fraction(raw)
        elif field == "cors_origins":
            values[field] = [origin.strip() for origin in raw.split(",") if origin.strip()]
        elif field == "log_level":
            values[field] = raw.upper()
        else:
            values[field] = int(raw)
    return values


@lru_cache(maxsize=1)
def get_settings() -> Settings:
    """Build the settings object once per process."""
    try:
        return Settings(**_read_env())
    except (ValueError, ZeroDivisionError) as e:
        raise RuntimeError(f"Invalid paramlat environment configuration: {str(e)}")
