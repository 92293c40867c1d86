"""Path alphabets π(Δ) and the path codes of ranked trees.

The path symbol (σ, i) is written ``sigma.i``; leaves keep their own name.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, List, Mapping, Optional, Sequence, Tuple

from config.constants import PATH_SEPARATOR
from models.errors import ValidationError
from models.tree import Tree
from utils.parsers import parse_path_file

Path = Tuple[str, ...]


def path_symbol(symbol: str, direction: int) -> str:
    return f"{symbol}{PATH_SEPARATOR}{direction}"


@dataclass(frozen=True)
class PathAlphabet:
    """π(Δ) = Δ0 ∪ {(σ, i) | σ ∈ Δk, 1 ≤ i ≤ k}."""

    ranks: Tuple[Tuple[str, int], ...]

    @classmethod
    def of(cls, ranks: Mapping[str, int]) -> "PathAlphabet":
        for symbol, rank in ranks.items():
            if rank < 0:
                raise ValidationError(f"Symbol '{symbol}' has negative rank {rank}")
        return cls(tuple(sorted(ranks.items())))

    @property
    def rank_of(self) -> Dict[str, int]:
        return dict(self.ranks)

    @property
    def leaves(self) -> Tuple[str, ...]:
        return tuple(symbol for symbol, rank in self.ranks if rank == 0)

    @property
    def symbols(self) -> Tuple[str, ...]:
        result: List[str] = []
        for symbol, rank in self.ranks:
            if rank == 0:
                result.append(symbol)
            else:
                result.extend(path_symbol(symbol, i) for i in range(1, rank + 1))
        return tuple(result)

    def decode(self, text: str) -> Tuple[str, Optional[int]]:
        """(σ, None) for a leaf, (σ, i) for a direction symbol; ValidationError otherwise."""
        ranks = self.rank_of
        if ranks.get(text) == 0:
            return text, None
        symbol, separator, direction = text.rpartition(PATH_SEPARATOR)
        if separator and direction.isdigit() and 1 <= int(direction) <= ranks.get(symbol, 0):
            return symbol, int(direction)
        raise ValidationError(f"'{text}' is not a symbol of the path alphabet")

    def __contains__(self, text: str) -> bool:
        try:
            self.decode(text)
        except ValidationError:
            return False
        return True

    def parse_path(self, line: str) -> Path:
        """A whitespace-separated path string; every symbol must belong to π(Δ)."""
        path = tuple(line.split())
        for symbol in path:
            self.decode(symbol)
        return path


def paths(t: Tree) -> FrozenSet[Path]:
    """π(t): one root-to-leaf code per leaf."""
    if not t.children:
        return frozenset({(t.label,)})
    result = set()
    for direction, child in enumerate(t.children, start=1):
        head = path_symbol(t.label, direction)
        result.update((head,) + rest for rest in paths(child))
    return frozenset(result)


def paths_of_language(trees: Iterable[Tree]) -> FrozenSet[Path]:
    result = set()
    for t in trees:
        result.update(paths(t))
    return frozenset(result)


def format_path(path: Sequence[str]) -> str:
    return " ".join(path)


def read_path_file(text: str, alphabet: PathAlphabet) -> FrozenSet[Path]:
    """One path string per line; every symbol must belong to π(Δ)."""
    result = set()
    for path in parse_path_file(text):
        for symbol in path:
            alphabet.decode(symbol)
        result.add(path)
    return frozenset(result)
