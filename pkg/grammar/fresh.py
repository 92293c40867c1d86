"""Reproducible fresh names in the reserved ``base~n`` namespace."""
from __future__ import annotations

from typing import Dict, Iterable, Set

from config.constants import FRESH_SEPARATOR


class FreshNames:
    """Hands out ``base~1``, ``base~2``, ... avoiding every name already in use."""

    def __init__(self, used: Iterable[str] = ()):
        self._used: Set[str] = set(used)
        self._counters: Dict[str, int] = {}

    def reserve(self, name: str) -> None:
        self._used.add(name)

    def fresh(self, base: str) -> str:
        stem = base_name(base)
        counter = self._counters.get(stem, 0)
        while True:
            counter += 1
            candidate = f"{stem}{FRESH_SEPARATOR}{counter}"
            if candidate not in self._used:
                break
        self._counters[stem] = counter
        self._used.add(candidate)
        return candidate

    def __contains__(self, name: str) -> bool:
        return name in self._used


def base_name(name: str) -> str:
    """Strip a trailing numeric fresh suffix: ``A~3`` becomes ``A``."""
    stem, separator, suffix = name.rpartition(FRESH_SEPARATOR)
    if separator and suffix.isdigit() and stem:
        return stem
    return name


def for_grammar(g) -> FreshNames:
    """A name supply avoiding the grammar's nonterminals and terminals."""
    return FreshNames(list(g.nonterminals) + list(g.terminal_names))
