"""Utility modules for the super Jordan type toolkit."""
from superjordan.utils.logging_config import get_logger, get_certificate_logger, configure_console
