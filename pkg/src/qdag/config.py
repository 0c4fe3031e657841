"""Configuration helpers for the service and logging.

Service settings are resolved from environment variables, optionally loaded
from a `.env` file next to the working directory. The command-line interface
does not read them; it takes everything from flags.
"""

import logging
import os
import sys
from dataclasses import dataclass
from typing import Tuple

from dotenv import load_dotenv

LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"

_HANDLER_NAME = "qdag-stderr"


@dataclass(frozen=True)
class Settings:
    """Resolved service settings."""

    api_host: str = "127.0.0.1"
    api_port: int = 8000
    log_level: str = "INFO"
    max_upload_bytes: int = 1 << 20
    cors_origins: Tuple[str, ...] = ()


def get_settings() -> Settings:
    """Resolve settings from the environment.

    - QDAG_API_HOST / QDAG_API_PORT: where uvicorn binds
    - QDAG_LOG_LEVEL: root level for the `qdag` logger
    - QDAG_MAX_UPLOAD_BYTES: size cap for /api/validate uploads
    - QDAG_CORS_ORIGINS: comma-separated browser origins allowed by CORS; empty disables CORS
    """
    load_dotenv()
    return Settings(
        api_host=os.getenv("QDAG_API_HOST", "127.0.0.1"),
        api_port=int(os.getenv("QDAG_API_PORT", "8000")),
        log_level=os.getenv("QDAG_LOG_LEVEL", "INFO").upper(),
        max_upload_bytes=int(os.getenv("QDAG_MAX_UPLOAD_BYTES", str(1 << 20))),
        cors_origins=tuple(o.strip() for o in os.getenv("QDAG_CORS_ORIGINS", "").split(",") if o.strip()),
    )


def configure_logging(level: str = "INFO") -> logging.Logger:
    """Install a single stderr handler on the `qdag` logger.

    Repeated calls reuse the handler and point it at the current sys.stderr.
    """
    logger = logging.getLogger("qdag")
    logger.setLevel(level.upper())
    existing = [h for h in logger.handlers if h.get_name() == _HANDLER_NAME]
    if existing:
        existing[0].setStream(sys.stderr)
    else:
        handler = logging.StreamHandler(sys.stderr)
        handler.set_name(_HANDLER_NAME)
        handler.setFormatter(logging.Formatter(LOG_FORMAT))
        logger.addHandler(handler)
    return logger
