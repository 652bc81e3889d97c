"""
Logging configuration for the super Jordan type toolkit.
Uses loguru for structured logging with file rotation.
"""
import sys
from loguru import logger

from superjordan.config import settings

LOGS_DIR = settings.logs_dir
LOGS_DIR.mkdir(exist_ok=True)

CONSOLE_FORMAT = (
    "<green>{time:HH:mm:ss}</green> | <level>{level: <8}</level> | "
    "<cyan>{extra[name]}</cyan>:<cyan>{function}</cyan> - <level>{message}</level>"
)

# Remove default handler
logger.remove()
logger.configure(extra={"name": "superjordan", "certificate": False})

_console_id = logger.add(
    sys.stderr,
    format=CONSOLE_FORMAT,
    level=settings.log_level,
    colorize=True
)

# Main log file - DEBUG level with rotation
logger.add(
    LOGS_DIR / "superjordan.log",
    format="{time:YYYY-MM-DD HH:mm:ss.SSS} | {level: <8} | {extra[name]}:{function}:{line} - {message}",
    level="DEBUG",
    rotation="10 MB",
    retention="7 days",
    compression="zip"
)

# Error log file - ERROR level only
logger.add(
    LOGS_DIR / "errors.log",
    format="{time:YYYY-MM-DD HH:mm:ss.SSS} | {level: <8} | {extra[name]}:{function}:{line} - {message}\n{exception}",
    level="ERROR",
    rotation="5 MB",
    retention="30 days"
)

# Certificate decisions - generic ranks, minors counts, Groebner sizes, fallbacks
logger.add(
    LOGS_DIR / "certificates.log",
    format="{time:YYYY-MM-DD HH:mm:ss.SSS} | {extra[name]} | {message}",
    level="DEBUG",
    filter=lambda record: record["extra"].get("certificate", False),
    rotation="50 MB",
    retention="14 days"
)


def configure_console(level: str):
    """Replace the console sink with one at the given level."""
    global _console_id
    logger.remove(_console_id)
    _console_id = logger.add(sys.stderr, format=CONSOLE_FORMAT, level=level.upper(), colorize=True)


def get_logger(name: str):
    """Get a logger instance with the given name."""
    return logger.bind(name=name)


def get_certificate_logger(stage: str):
    """Get a logger for tracing certification decisions."""
    return logger.bind(name=stage, certificate=True)
