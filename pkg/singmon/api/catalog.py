import logging
from typing import List, Optional

from fastapi import APIRouter, Query

from singmon.api import DOMAIN_ERRORS, as_http_error
from singmon.models import CatalogEntry
from singmon.processing.catalog import entries, lookup

router = APIRouter()
logger = logging.getLogger("singmon.api.catalog")


@router.get("", response_model=List[CatalogEntry])
def list_entries(max_index: int = Query(8, ge=1, le=64)):
    """Simply elliptic entries and the Kleinian entries up to the given root-system rank."""
    return entries(max_index)


@router.get("/{name}", response_model=CatalogEntry)
def get_entry(name: str, parameter: Optional[int] = None):
    """Look up an entry by name, alias, family name with `parameter`, or root-system label."""
    try:
        return lookup(name, parameter)
    except DOMAIN_ERRORS as e:
        logger.info("catalog lookup %r failed: %s", name, e)
        raise as_http_error(e)
