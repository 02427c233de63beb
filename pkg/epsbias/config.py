"""Configuration for the laboratory, read from the environment or a .env file."""
import logging
import os

from dotenv import load_dotenv

load_dotenv()

DEFAULT_MAX_ENUM = 2 ** 24
DEFAULT_CHUNK_SIZE = 65536
LOG_FORMAT = '%(asctime)s - %(levelname)s - %(message)s'

logger = logging.getLogger(__name__)


def _int_from_env(name: str, default: int) -> int:
    """Read a positive integer from the environment, falling back to default."""
    raw = os.getenv(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        value = int(raw)
    except ValueError:
        logger.warning("Ignoring %s=%r: not an integer", name, raw)
        return default
    if value < 1:
        logger.warning("Ignoring %s=%r: must be positive", name, raw)
        return default
    return value


def get_max_enum(override: int | None = None) -> int:
    """Enumeration cap: explicit override, else EPSBIAS_MAX_ENUM, else 2**24."""
    if override is not None:
        return int(override)
    return _int_from_env('EPSBIAS_MAX_ENUM', DEFAULT_MAX_ENUM)


def get_workers(override: int | None = None) -> int:
    """Default worker count for trials and enumeration chunks."""
    if override is not None:
        return max(1, int(override))
    return _int_from_env('EPSBIAS_WORKERS', 1)


def get_chunk_size(override: int | None = None) -> int:
    """Number of messages encoded per enumeration chunk."""
    if override is not None:
        return max(1, int(override))
    return _int_from_env('EPSBIAS_CHUNK_SIZE', DEFAULT_CHUNK_SIZE)


def configure_logging(level: str | None = None) -> None:
    """Attach a stderr handler to the root logger.

    Only entry points call this; library modules just create loggers.

    Args:
        level: logging level name, defaults to EPSBIAS_LOG_LEVEL or INFO
    """
    level_name = (level or os.getenv('EPSBIAS_LOG_LEVEL') or 'INFO').upper()
    logging.basicConfig(level=getattr(logging, level_name, logging.INFO),
                        format=LOG_FORMAT)
