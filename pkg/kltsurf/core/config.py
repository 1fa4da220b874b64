from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    # Pydantic v2 settings: read from .env and ignore extra keys so unrelated env vars never crash the CLI
    model_config = SettingsConfigDict(env_file=".env", extra="ignore")

    # Sweep fan-out. The only knob the environment has over a run; results are identical for any value.
    WORKERS: int = Field(1, ge=1)
    DEBUG: bool = False  # INFO-level progress on stderr

    # Memo for Δ values and discrepancy vectors (entries, oldest evicted first). 0 disables.
    MEMO_MAX_ENTRIES: int = Field(500_000, ge=0)

    # Failure witnesses kept per sweep summary; counts are never truncated
    FAILURE_WITNESS_LIMIT: int = Field(50, ge=0)

    # HTTP surface
    APP_HOST: str = "127.0.0.1"
    APP_PORT: int = 8000
    API_MAX_ENUMERATION: int = Field(50_000, ge=1)  # instances an HTTP-triggered sweep may visit
    API_MAX_VERTICES: int = Field(200, ge=1)  # largest graph or HJ chain a single request may carry
    SLOW_REQUEST_THRESHOLD_SEC: float = 1.0


settings = Settings()
