import pytest

from models.schemas import Bounds
from utils.config_loader import corpus_path
from utils.parsers import load_grammar


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: exhaustive checks over larger bounds")


@pytest.fixture(scope="session")
def corpus():
    """Loader for the bundled grammars, cached per session."""
    loaded = {}

    def load(name: str):
        if name not in loaded:
            loaded[name] = load_grammar(corpus_path(name))
        return loaded[name]

    return load


@pytest.fixture
def small_bounds():
    return Bounds(max_len=12, max_steps=120, max_forms=200_000, max_input=4)


def words(*texts):
    """Character strings as symbol tuples; '' is the empty word."""
    return frozenset(tuple(text) for text in texts)
