"""
Logging configuration for CoPart.
Provides structured logging with loguru.

Console output goes to stderr: stdout carries machine-readable CLI output.
"""
import sys
from pathlib import Path
from loguru import logger
from .config import settings


CONSOLE_FORMAT = (
    "<green>{time:YYYY-MM-DD HH:mm:ss}</green> | "
    "<level>{level: <8}</level> | "
    "<cyan>{extra[module]}</cyan> | "
    "<level>{message}</level>"
)
FILE_FORMAT = "{time:YYYY-MM-DD HH:mm:ss} | {level: <8} | {extra[module]} | {name}:{function}:{line} | {message}"


def setup_logging(level: str = None):
    """Configure loguru logging for the application"""

    # Remove default handler
    logger.remove()
    logger.configure(extra={"module": "copart"})

    logger.add(
        sys.stderr,
        level=level or settings.LOG_LEVEL,
        format=CONSOLE_FORMAT,
        colorize=True,
        backtrace=settings.DEBUG,
        diagnose=settings.DEBUG,
    )

    if settings.LOG_TO_FILE:
        log_dir = Path(settings.LOG_DIR)
        log_dir.mkdir(parents=True, exist_ok=True)

        logger.add(
            log_dir / "copart.log",
            level="INFO",
            format=FILE_FORMAT,
            rotation="10 MB",
            retention="30 days",
            compression="zip",
            enqueue=True,
        )
        logger.add(
            log_dir / "errors.log",
            level="ERROR",
            format=FILE_FORMAT,
            rotation="5 MB",
            retention="60 days",
            compression="zip",
            backtrace=True,
            diagnose=True,
            enqueue=True,
        )


def get_logger(name: str):
    """Get a logger instance for a specific module"""
    return logger.bind(module=name)


# Pre-configured loggers
search_logger = get_logger("optimizer")
generator_logger = get_logger("generator")
oracle_logger = get_logger("oracle")
harness_logger = get_logger("harness")
api_logger = get_logger("api")
