from pydantic_settings import BaseSettings, SettingsConfigDict
from src.utils.logger import LogLevels


class Settings(BaseSettings):
    # Application Settings
    app_name: str = "Boundary Dynamics Toolkit"
    version: str = "1.0.0"
    debug: bool = False

    # Search Bounds
    repeatable_max_len: int = 4
    witness_search_bound: int = 10_000
    witness_max_power: int = 6
    north_south_power_bound: int = 8
    north_south_depth: int = 2
    carry_cycle_bound: int = 256

    # Output Settings
    default_output_format: str = "text"

    # Logging Configuration
    log_level: str = LogLevels.WARNING
    log_to_file: bool = False
    log_dir: str = "logs"
    max_log_file_size_mb: int = 10
    log_backup_count: int = 5

    model_config = SettingsConfigDict(
        env_file=".env",
        env_prefix="BSDYN_",
        case_sensitive=False,
        extra="ignore",
    )

    def __init__(self, **kwargs):
        super().__init__(**kwargs)
        if self.default_output_format not in ("text", "json"):
            raise ValueError("BSDYN_DEFAULT_OUTPUT_FORMAT must be 'text' or 'json'")
        if self.witness_search_bound < 1 or self.carry_cycle_bound < 1:
            raise ValueError("Search bounds must be positive")


settings = Settings()
