"""File validation endpoint."""

import logging
from pathlib import PurePath

from fastapi import APIRouter, Depends, File, HTTPException, UploadFile

from qdag.api import http_errors
from qdag.config import Settings, get_settings
from qdag.errors import QdagError
from qdag.formats import describe, parse_text

logger = logging.getLogger(__name__)

router = APIRouter()


@router.post("/validate")
async def validate_upload(file: UploadFile = File(...), settings: Settings = Depends(get_settings)):
    """
    Validate an uploaded .dag, .circ or .anf file.

    The filename extension selects the format. Returns the derived stats, or
    400 with the positioned error message.
    """
    data = await file.read(settings.max_upload_bytes + 1)
    if len(data) > settings.max_upload_bytes:
        raise HTTPException(status_code=413, detail=f"upload larger than {settings.max_upload_bytes} bytes")
    try:
        text = data.decode("utf-8")
    except UnicodeDecodeError:
        raise HTTPException(status_code=400, detail="file is not valid UTF-8") from None

    name = file.filename or ""
    with http_errors():
        try:
            loaded = parse_text(text, PurePath(name).suffix, source=name)
        except QdagError as e:
            logger.warning("validation of %s failed: %s", name, e)
            raise
        return {"valid": True, "filename": name, **describe(loaded)}
