"""Super Jordan types of supermodules over sl(1|1)^r and exterior superalgebras."""
from superjordan.utils.logging_config import get_logger, get_certificate_logger

__version__ = "0.3.0"
