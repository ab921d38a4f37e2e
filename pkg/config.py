import logging
import os
from typing import Optional

from dotenv import load_dotenv

load_dotenv()


def _get_env(key: str, default: Optional[str] = None) -> Optional[str]:
    """
    Fetch environment variable, trim whitespace, and normalize empty strings to None.
    """
    value = os.getenv(key)
    if value is None or value.strip() == "":
        value = default
    if value is None:
        return None
    return value.strip()


def _get_int(key: str, default: int) -> int:
    """
    Parse an integer setting.
    Falls back to the supplied default if the value is missing or malformed.
    """
    raw_value = _get_env(key)
    if raw_value is None:
        return default
    try:
        return int(raw_value)
    except ValueError:
        return default


# Logging
LOG_LEVEL = (_get_env('MATCHING_LOG_LEVEL', 'INFO') or 'INFO').upper()
if not isinstance(logging.getLevelName(LOG_LEVEL), int):
    LOG_LEVEL = 'INFO'

# Run history
DATABASE_PATH = _get_env('MATCHING_DB_PATH', 'matching_runs.db')

# Random generation
DEFAULT_SEED = _get_int('MATCHING_DEFAULT_SEED', 20240601)

# Oracle guards
ORACLE_MAX_VERTICES = _get_int('ORACLE_MAX_VERTICES', 14)
ORACLE_MAX_EDGES = _get_int('ORACLE_MAX_EDGES', 30)
ORACLE_MAX_PATHS = _get_int('ORACLE_MAX_PATHS', 200000)
LAYERED_MAX_PATHS = _get_int('LAYERED_MAX_PATHS', 100000)
REFERENCE_MAX_VERTICES = _get_int('REFERENCE_MAX_VERTICES', 200)

# Input formats
GRAPH_FORMATS = ['dimacs', 'edge-list']
OUTPUT_FORMATS = ['text', 'json']
