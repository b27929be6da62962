"""
Runtime configuration.
Values come from the environment (a local .env file is merged first).
"""
import os
import logging
from dotenv import load_dotenv

load_dotenv()

logger = logging.getLogger(__name__)


def _env_int(name, default, minimum=0):
    raw = os.environ.get(name)
    if raw is None or raw == '':
        return default
    try:
        value = int(raw)
    except ValueError:
        logger.warning(f"[CONFIG] {name}={raw!r} is not an integer, using {default}")
        return default
    if value < minimum:
        logger.warning(f"[CONFIG] {name}={value} is below {minimum}, using {default}")
        return default
    return value


def _env_float(name, default):
    raw = os.environ.get(name)
    if raw is None or raw == '':
        return default
    try:
        value = float(raw)
    except ValueError:
        logger.warning(f"[CONFIG] {name}={raw!r} is not a number, using {default}")
        return default
    if not 0.0 <= value <= 1.0:
        logger.warning(f"[CONFIG] {name}={value} is outside [0, 1], using {default}")
        return default
    return value


SECRET_KEY = os.environ.get('SECRET_KEY', 'dev')
DATABASE_URL = os.environ.get('DATABASE_URL', 'sqlite:///termination.db')

# Witness evidence depth and the adaptive bound schedule of cross-checks
SIMULATION_BOUND = _env_int('SIMULATION_BOUND', 50)
ADAPTIVE_START_BOUND = _env_int('ADAPTIVE_START_BOUND', 100, minimum=1)
ADAPTIVE_MAX_BOUND = _env_int('ADAPTIVE_MAX_BOUND', 6400, minimum=1)

# 'dimension' raises (A - lambda I) to n, 'multiplicity' to d_lambda
DECISION_EXPONENT = os.environ.get('DECISION_EXPONENT', 'dimension').lower()
if DECISION_EXPONENT not in ('dimension', 'multiplicity'):
    logger.warning(f"[CONFIG] DECISION_EXPONENT={DECISION_EXPONENT!r} unknown, using 'dimension'")
    DECISION_EXPONENT = 'dimension'

BENCH_MAGNITUDE = _env_int('BENCH_MAGNITUDE', 10, minimum=1)
BENCH_WORKERS = _env_int('BENCH_WORKERS', 1, minimum=1)
BENCH_AUDIT_RATE = _env_float('BENCH_AUDIT_RATE', 0.05)

REPORT_TIMEZONE = os.environ.get('REPORT_TIMEZONE', 'UTC')
LOG_LEVEL = os.environ.get('LOG_LEVEL', 'INFO').upper()
