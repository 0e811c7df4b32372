from pathlib import Path

import pytest

from config import DEFAULTS
from relalg.relations import successor, universe_from_words

DATA = Path(__file__).parent / "data"

WEEKDAYS = ("Monday", "Tuesday", "Wednesday", "Thursday", "Friday", "Saturday", "Sunday")


@pytest.fixture(autouse=True, scope="session")
def clean_environment(tmp_path_factory):
    """Keep a developer's .env and RELALG_* variables out of the tests."""
    with pytest.MonkeyPatch.context() as mp:
        mp.chdir(tmp_path_factory.mktemp("cwd"))
        for key in DEFAULTS:
            mp.delenv(key, raising=False)
        yield


@pytest.fixture
def data_dir():
    return DATA


@pytest.fixture
def weekdays():
    return universe_from_words(WEEKDAYS)


@pytest.fixture
def s(weekdays):
    return successor(weekdays)
