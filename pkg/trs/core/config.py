"""
🧮 Twisted RS Toolkit Configuration
Core application settings and environment variables
"""

from functools import lru_cache
from typing import List, Union

from pydantic import field_validator
from pydantic_settings import BaseSettings


class Settings(BaseSettings):
    """Application settings with environment variable support"""

    # 🌐 Application Settings
    APP_NAME: str = "Twisted RS Toolkit"
    APP_VERSION: str = "1.0.0"
    DEBUG: bool = True
    ENVIRONMENT: str = "development"

    # 🔗 API Configuration
    API_V1_STR: str = "/api/v1"
    ENABLE_CORS: bool = True
    CORS_ORIGINS: List[str] = ["*"]

    @field_validator("CORS_ORIGINS", mode="before")
    @classmethod
    def assemble_cors_origins(cls, v: Union[str, List[str]]) -> Union[List[str], str]:
        if isinstance(v, str) and not v.startswith("["):
            return [i.strip() for i in v.split(",") if i.strip()]
        elif isinstance(v, (list, str)):
            return v
        raise ValueError(v)

    # 📊 Monitoring & Logging
    LOG_LEVEL: str = "INFO"
    ENABLE_LOGGING: bool = True
    LOG_FILE: str = "logs/trs.log"
    LOG_ROTATION: str = "1 day"
    LOG_RETENTION: str = "7 days"

    # 🎲 Simulation Defaults
    SIM_TRIALS: int = 200
    SIM_CODES: int = 10
    SIM_PAPER_TRIALS: int = 1000
    SIM_PAPER_CODES: int = 50
    SIM_FAILURE_THRESHOLD: float = 0.2
    SIM_MASTER_SEED: int = 2024
    SIM_WORKERS: int = 1
    SIM_EXECUTOR: str = "local"  # local | celery
    SIM_ENGINE: str = "linear"  # linear | popov
    SIM_BEYOND_RADIUS: bool = True

    # 🛡️ Feasibility Guards
    MAX_FIELD_ORDER: int = 2**20
    SUM_PRODUCT_BUDGET: int = 10**7  # q0^(2^ell - 1) assignments
    K_SUM_BUDGET: int = 10**7  # C(|S|, k) * |A|
    ENUMERATION_BUDGET: int = 10**6  # q^k codewords
    BRUTE_FORCE_BUDGET: int = 20000  # q^ell twist guesses
    EMBEDDING_CHECK_LIMIT: int = 2**10
    CENSUS_BUDGET: int = 4096
    API_MAX_SYNC_DECODES: int = 20000

    # 📁 Report Storage
    REPORTS_DIR: str = "reports"

    # 🔄 Celery Configuration
    CELERY_BROKER_URL: str = "redis://localhost:6379/0"
    CELERY_RESULT_BACKEND: str = "redis://localhost:6379/0"
    CELERY_TASK_SERIALIZER: str = "json"
    CELERY_RESULT_SERIALIZER: str = "json"
    CELERY_ACCEPT_CONTENT: List[str] = ["json"]
    CELERY_TIMEZONE: str = "UTC"
    CELERY_TASK_ALWAYS_EAGER: bool = False

    class Config:
        env_file = ".env"
        case_sensitive = True
        extra = "ignore"

    @property
    def is_development(self) -> bool:
        """Check if running in development mode"""
        return self.ENVIRONMENT.lower() == "development"

    @property
    def is_production(self) -> bool:
        """Check if running in production mode"""
        return self.ENVIRONMENT.lower() == "production"


@lru_cache()
def get_settings() -> Settings:
    """Get cached settings instance"""
    return Settings()


# Global settings instance
settings = get_settings()
