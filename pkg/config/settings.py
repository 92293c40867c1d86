# ============================================================================
# FILE: config/settings.py
# ============================================================================
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    # Search bounds
    MAX_LEN: int = 16
    MAX_STEPS: int = 200
    MAX_FORMS: int = 2_000_000
    MAX_INPUT: int = 6

    # Look-ahead and witness search
    LOOKAHEAD_STEP_BOUND: int = 500
    WITNESS_CONFIGURATIONS: int = 2_000

    # Runtime
    JOBS: int = 1
    LOG_LEVEL: str = "WARNING"
    CORPUS_DIR: str = "corpus"

    model_config = SettingsConfigDict(env_file=".env", env_prefix="GWS_", case_sensitive=True)


# Global settings instance
settings = Settings()
