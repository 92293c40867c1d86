"""
Argument validation helpers
Checks on bound flags and file arguments before any search starts
"""

from pathlib import Path
from typing import Iterable, Optional

from config.constants import CONSTRUCTIONS
from models.errors import PreconditionError, ValidationError


def validate_positive(name: str, value: Optional[int]) -> Optional[int]:
    if value is not None and value <= 0:
        raise ValidationError(f"--{name.replace('_', '-')} must be positive, got {value}")
    return value


def validate_grammar_file(path: str) -> Path:
    file = Path(path)
    if not file.is_file():
        raise ValidationError(f"Grammar file '{path}' does not exist")
    return file


def validate_construction(name: str) -> str:
    if name not in CONSTRUCTIONS:
        raise ValidationError(f"Unknown construction '{name}'; expected one of {', '.join(CONSTRUCTIONS)}")
    return name


def validate_finals(finals: Iterable[str], nonterminals: Iterable[str]) -> frozenset:
    """Final states must be declared nonterminals."""
    finals = frozenset(finals)
    unknown = sorted(finals - set(nonterminals))
    if unknown:
        raise PreconditionError(f"final states {unknown} are not nonterminals of the grammar")
    return finals
