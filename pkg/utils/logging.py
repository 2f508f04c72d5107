import logging
import sys

from utils.config import _MALFORMED, LOG_FILE, LOG_LEVEL

# stdout carries reports, so log lines go to stderr
handlers = [logging.StreamHandler(sys.stderr)]
if LOG_FILE:
    handlers.append(logging.FileHandler(LOG_FILE))

logging.basicConfig(
    level=getattr(logging, LOG_LEVEL, logging.INFO),
    format="%(asctime)s [%(levelname)s] %(message)s",
    handlers=handlers,
)

logger = logging.getLogger("lcwlab")

for name, raw in _MALFORMED:
    logger.warning(f"Ignoring malformed {name}={raw!r}; using the default")
