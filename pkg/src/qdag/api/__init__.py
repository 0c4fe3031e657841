"""HTTP routers. Each module exposes `router`; main.py mounts them under /api."""

from contextlib import contextmanager
from typing import Iterator

from fastapi import HTTPException

from qdag.errors import QdagError


@contextmanager
def http_errors() -> Iterator[None]:
    """Re-raise QdagError as HTTPException(err.http_status, str(err))."""
    try:
        yield
    except QdagError as e:
        raise HTTPException(status_code=e.http_status, detail=str(e)) from e
