from fastapi import FastAPI

from singmon.api.catalog import router as catalog_router
from singmon.api.shapes import router as shapes_router
from singmon.api.singularities import router as singularities_router
from singmon.logging_config import configure_logging

configure_logging()

app = FastAPI(title="singmon")
app.include_router(shapes_router, prefix="/shapes", tags=["shapes"])
app.include_router(singularities_router, prefix="/singularities", tags=["singularities"])
app.include_router(catalog_router, prefix="/catalog", tags=["catalog"])


@app.get("/health")
def health():
    return {"status": "ok"}
