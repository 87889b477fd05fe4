"""
Core configuration module for CoPart.
Exports settings, logging and the error hierarchy.
"""
from .config import settings, get_settings
from .logging import setup_logging, get_logger
from .exceptions import (
    CoPartError,
    PreconditionViolation,
    ConfigurationError,
    SearchInvariantError,
    AllocationTimeout,
    OracleSizeError,
)

__all__ = [
    "settings",
    "get_settings",
    "setup_logging",
    "get_logger",
    "CoPartError",
    "PreconditionViolation",
    "ConfigurationError",
    "SearchInvariantError",
    "AllocationTimeout",
    "OracleSizeError",
]
