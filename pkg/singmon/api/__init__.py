# API package
from fastapi import HTTPException
from pydantic import ValidationError

from singmon.errors import SingmonError, UnknownEntry


def int_list(text: str, name: str):
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise HTTPException(status_code=422, detail=f"{name} must be comma-separated integers")


def as_http_error(exc: Exception) -> HTTPException:
    if isinstance(exc, UnknownEntry):
        return HTTPException(status_code=404, detail=str(exc))
    if isinstance(exc, ValidationError):
        return HTTPException(status_code=422, detail="; ".join(err["msg"] for err in exc.errors()))
    return HTTPException(status_code=422, detail=str(exc))


DOMAIN_ERRORS = (SingmonError, ValidationError)
