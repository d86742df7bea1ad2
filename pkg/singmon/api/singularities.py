import logging

from fastapi import APIRouter, HTTPException

from singmon.api import DOMAIN_ERRORS, as_http_error, int_list
from singmon.models import MonodromyResult, PoincareBundle, SeifertData
from singmon.processing.monodromy import charpoly_hypersurface, charpoly_oracle
from singmon.processing.seifert import bundle, seifert_data

router = APIRouter()
logger = logging.getLogger("singmon.api.singularities")


def _weights(weights: str):
    q = int_list(weights, "weights")
    if len(q) != 3:
        raise HTTPException(status_code=422, detail=f"expected three weights, got {len(q)}")
    return q


@router.get("/monodromy", response_model=MonodromyResult)
def monodromy(weights: str, degree: int, oracle: bool = False):
    """Characteristic polynomial of the monodromy of a hypersurface with the given weights."""
    q1, q2, q3 = _weights(weights)
    try:
        if oracle:
            return charpoly_oracle(q1, q2, q3, degree)
        return charpoly_hypersurface(q1, q2, q3, degree)
    except DOMAIN_ERRORS as e:
        logger.info("monodromy of %s/%s rejected: %s", weights, degree, e)
        raise as_http_error(e)


@router.get("/bundle", response_model=PoincareBundle)
def poincare_bundle(weights: str, degree: int):
    q1, q2, q3 = _weights(weights)
    try:
        return bundle(q1, q2, q3, degree)
    except DOMAIN_ERRORS as e:
        raise as_http_error(e)


@router.get("/orbit", response_model=SeifertData)
def orbit(weights: str, degree: int):
    q1, q2, q3 = _weights(weights)
    try:
        return seifert_data(q1, q2, q3, degree)
    except DOMAIN_ERRORS as e:
        raise as_http_error(e)
