# utils/config.py

import os

from dotenv import load_dotenv

load_dotenv()

# (name, raw value) pairs that failed to parse; utils.logging reports them
_MALFORMED = []


def _env_number(name, default, cast):
    raw = os.getenv(name, "")
    if not raw:
        return default
    try:
        return cast(raw)
    except ValueError:
        _MALFORMED.append((name, raw))
        return default


LOG_LEVEL = os.getenv("LOG_LEVEL", "INFO").upper()
LOG_FILE = os.getenv("LCWLAB_LOG_FILE", "")

WORKERS = max(1, _env_number("LCWLAB_WORKERS", 1, int))
EIGEN_TOL = _env_number("LCWLAB_EIGEN_TOL", 1e-12, float)
DESCENT_STARTS = max(1, _env_number("LCWLAB_DESCENT_STARTS", 64, int))
MAX_DENOMINATOR = max(1, _env_number("LCWLAB_MAX_DENOMINATOR", 10**6, int))

# 4D flag search
DESCENT_FD_STEP = 1e-6
DESCENT_STOP_DEFECT = 1e-14
DESCENT_MAX_ITERATIONS = 500
NO_FLAG_FLOOR = 1e-8
EIGEN_GAP = 1e-9

FIXTURES_DIR = os.path.abspath(os.path.join(os.path.dirname(__file__), "..", "data", "fixtures"))
