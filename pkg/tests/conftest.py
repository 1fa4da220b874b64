from pathlib import Path

import pytest

from kltsurf.core.cache import memo
from kltsurf.schemas.graph import CurveAttachment
from kltsurf.services.dualgraph import chain, fork, star

CORPUS_DIR = Path(__file__).parent / "corpus"


@pytest.fixture
def corpus_dir() -> Path:
    return CORPUS_DIR


@pytest.fixture
def fresh_memo():
    memo.clear()
    yield memo
    memo.clear()


@pytest.fixture
def chain222():
    return chain((2, 2, 2))


@pytest.fixture
def chain32():
    return chain((3, 2))


@pytest.fixture
def d4_star():
    return star((2, 2, 2), 2)


@pytest.fixture
def d5_fork():
    """D5 with the curve at the far end of the arm (vertex 5)."""
    return fork((2, 2), 2, (2, 2)), CurveAttachment(c=(0, 0, 0, 0, 1))
