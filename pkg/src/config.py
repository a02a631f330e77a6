"""Configurações da aplicação."""

from functools import lru_cache

from pydantic_settings import BaseSettings, SettingsConfigDict

from . import __version__


class Settings(BaseSettings):
    """Configurações do weakram lidas do ambiente (prefixo WEAKRAM_) e do .env."""

    model_config = SettingsConfigDict(
        env_file=".env",
        env_prefix="WEAKRAM_",
        case_sensitive=False,
        extra="ignore",
    )

    # Logging
    log_level: str = "INFO"
    log_file: str = "logs/weakram.log"
    log_rotation: str = "1 day"
    log_retention: str = "7 days"
    environment: str = "development"

    # Precisão
    precision_margin: int = 16
    precision_escalation_factor: int = 2
    max_precision_escalations: int = 1

    # Certificados
    display_digits: int = 4
    brute_force_limit: int = 2**20
    schema_version: int = 1
    tool_version: str = __version__

    # Lotes
    batch_workers: int = 4


@lru_cache()
def get_settings() -> Settings:
    """Retorna instância singleton das configurações."""
    return Settings()
