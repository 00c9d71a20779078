import logging
import logging.handlers
import sys
from pathlib import Path
from src.core.compat import StrEnum

LOG_FORMAT_DEBUG = "%(asctime)s - %(levelname)s:%(message)s:%(pathname)s:%(funcName)s:%(lineno)d"
LOG_FORMAT_STANDARD = "%(asctime)s - %(levelname)s - %(name)s - %(message)s"
LOG_FILE_NAME = "bsdyn.log"


class LogLevels(StrEnum):
    DEBUG = "DEBUG"
    INFO = "INFO"
    WARNING = "WARNING"
    ERROR = "ERROR"


def configure_logging(
    log_level: str = LogLevels.WARNING,
    log_to_file: bool = False,
    log_dir: str = "logs",
    max_file_size_mb: int = 10,
    backup_count: int = 5,
):
    """
    Configure root logging for a CLI run.

    Console output always goes to stderr; stdout carries reports only.

    Args:
        log_level: Logging level (DEBUG, INFO, WARNING, ERROR)
        log_to_file: Whether to also write a rotating log file
        log_dir: Directory that receives the log file
        max_file_size_mb: Maximum size of each log file in MB
        backup_count: Number of rotated files to keep
    """
    log_level = str(log_level).upper()
    allowed = [level.value for level in LogLevels]
    if log_level not in allowed:
        raise ValueError(f"Invalid log level: {log_level}. Must be one of {allowed}")

    format_str = LOG_FORMAT_DEBUG if log_level == LogLevels.DEBUG else LOG_FORMAT_STANDARD
    formatter = logging.Formatter(format_str)

    handlers: list[logging.Handler] = []

    if log_to_file:
        directory = Path(log_dir)
        directory.mkdir(parents=True, exist_ok=True)
        file_handler = logging.handlers.RotatingFileHandler(
            directory / LOG_FILE_NAME,
            maxBytes=max_file_size_mb * 1024 * 1024,
            backupCount=backup_count,
            encoding="utf-8",
        )
        file_handler.setFormatter(formatter)
        handlers.append(file_handler)

    console_handler = logging.StreamHandler(sys.stderr)
    console_handler.setFormatter(formatter)
    handlers.append(console_handler)

    logging.basicConfig(
        level=getattr(logging, log_level),
        handlers=handlers,
        force=True,
    )
