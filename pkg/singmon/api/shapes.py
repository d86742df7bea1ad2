import logging
from typing import Optional

from fastapi import APIRouter, Query

from singmon.api import DOMAIN_ERRORS, as_http_error, int_list
from singmon.models import FrameShape, IntPoly
from singmon.processing.frameshape import factor_cyclotomic, fs_parse, saito_dual, saito_dual_auto, to_polynomial

router = APIRouter()
logger = logging.getLogger("singmon.api.shapes")


@router.get("/dual", response_model=FrameShape)
def dual(shape: str, level: Optional[int] = Query(None, ge=1)):
    """Saito dual of a Frame shape; the level defaults to the lcm of its periods."""
    try:
        phi = fs_parse(shape)
        return saito_dual(phi, level) if level is not None else saito_dual_auto(phi)
    except DOMAIN_ERRORS as e:
        logger.info("dual of %r rejected: %s", shape, e)
        raise as_http_error(e)


@router.get("/factor", response_model=FrameShape)
def factor(coeffs: str):
    """Frame shape of a cyclotomic product given by ascending coefficients."""
    try:
        return factor_cyclotomic(IntPoly(coeffs=int_list(coeffs, "coeffs")))
    except DOMAIN_ERRORS as e:
        raise as_http_error(e)


@router.get("/expand", response_model=IntPoly)
def expand(shape: str):
    """Coefficients of a polynomial Frame shape."""
    try:
        return to_polynomial(fs_parse(shape))
    except DOMAIN_ERRORS as e:
        raise as_http_error(e)
