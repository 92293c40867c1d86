"""Environment variable helpers shared across the project."""
from __future__ import annotations

import os
from pathlib import Path

from dotenv import load_dotenv

from models.schemas import Bounds

load_dotenv()

_REPO_ROOT = Path(__file__).resolve().parent.parent


def get_corpus_dir() -> Path:
    """Return the directory holding the bundled .gws grammars."""
    from config.settings import settings

    configured = Path(os.getenv("GWS_CORPUS_DIR", settings.CORPUS_DIR))
    return configured if configured.is_absolute() else _REPO_ROOT / configured


def corpus_path(name: str) -> Path:
    """Return the path of a corpus grammar, adding the .gws extension when missing."""
    filename = name if name.endswith(".gws") else f"{name}.gws"
    return get_corpus_dir() / filename


def default_bounds(**overrides: int) -> Bounds:
    """Bounds from the environment-backed settings, with explicit overrides applied."""
    from config.settings import settings

    values = {
        "max_len": settings.MAX_LEN,
        "max_steps": settings.MAX_STEPS,
        "max_forms": settings.MAX_FORMS,
        "max_input": settings.MAX_INPUT,
    }
    values.update({key: value for key, value in overrides.items() if value is not None})
    return Bounds(**values)
