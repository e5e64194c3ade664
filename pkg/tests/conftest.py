from datetime import datetime, timedelta, timezone
from pathlib import Path

import pytest

DATA_DIR = Path(__file__).parent / "data"


def fixed_clock(start: datetime | None = None, step_seconds: float = 0.0):
    """Deterministic clock; optionally advances by a fixed step per call."""
    state = {"now": start or datetime(2021, 6, 5, 12, 0, tzinfo=timezone.utc)}

    def clock() -> datetime:
        current = state["now"]
        state["now"] = current + timedelta(seconds=step_seconds)
        return current

    return clock


@pytest.fixture
def data_dir() -> Path:
    return DATA_DIR


@pytest.fixture
def pages_dir() -> Path:
    return DATA_DIR / "pages"


@pytest.fixture
def sessions_dir() -> Path:
    return DATA_DIR / "sessions"


@pytest.fixture
def corpus_path() -> Path:
    return DATA_DIR / "corpus" / "toy_corpus.ndjson"
