import pytest

from singmon.config import get_settings
from singmon.processing.frameshape import fs_parse

E8_SHAPE = "2*3*5*30/1*6*10*15"


@pytest.fixture(autouse=True)
def clean_settings(monkeypatch):
    """Every test starts from default settings, whatever the developer's .env says."""
    for name in (
        "SINGMON_LOG_LEVEL",
        "SINGMON_RESIDUE_NUMERATOR",
        "SINGMON_WORKERS",
        "SINGMON_SERIES_ORDER",
        "SINGMON_CORPUS_BOUND",
        "SINGMON_CORPUS_SIZE",
        "SINGMON_SEED",
        "SINGMON_CATALOG_PATH",
        "SINGMON_PROGRESS",
    ):
        monkeypatch.delenv(name, raising=False)
    monkeypatch.setattr("singmon.config.load_dotenv", lambda *args, **kwargs: False)
    get_settings.cache_clear()
    yield
    get_settings.cache_clear()


@pytest.fixture
def settings_env(monkeypatch):
    def apply(**values):
        for key, value in values.items():
            monkeypatch.setenv(f"SINGMON_{key.upper()}", str(value))
        get_settings.cache_clear()
        return get_settings()

    return apply


@pytest.fixture
def e8_shape():
    return fs_parse(E8_SHAPE)
