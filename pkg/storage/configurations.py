"""Storage configurations and input elements as closed, hashable symbolic values."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Tuple, Union

from models.tree import Tree
from utils.export import format_string


@dataclass(frozen=True)
class Unit:
    """The single input element u0 of storage types with a singleton input set."""

    def __str__(self) -> str:
        return "u0"


UNIT = Unit()


@dataclass(frozen=True)
class Atom:
    symbol: str

    def __str__(self) -> str:
        return self.symbol


@dataclass(frozen=True)
class Int:
    value: int

    def __str__(self) -> str:
        return str(self.value)


@dataclass(frozen=True)
class Str:
    """A sequence of atoms; pushdowns keep their top at index 0."""

    symbols: Tuple[str, ...]

    def __len__(self) -> int:
        return len(self.symbols)

    def __str__(self) -> str:
        return format_string(self.symbols)


@dataclass(frozen=True)
class Focus:
    """A tree with a distinguished node, addressed by 1-based child indices from the root."""

    tree: Tree
    path: Tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if self.tree.subtree(self.path) is None:
            raise ValueError(f"Path {self.path} does not address a node of {self.tree}")

    @property
    def node(self) -> Tree:
        return self.tree.subtree(self.path)

    def __str__(self) -> str:
        address = ".".join(str(index) for index in self.path) or "root"
        return f"{self.tree}@{address}"


@dataclass(frozen=True)
class Pair:
    left: Any
    right: Any

    def __str__(self) -> str:
        return f"({self.left}, {self.right})"


@dataclass(frozen=True)
class PairSeq:
    """Nonempty pushdown of (symbol, configuration) cells, top cell first."""

    cells: Tuple[Tuple[str, Any], ...]

    def __post_init__(self) -> None:
        if not self.cells:
            raise ValueError("A pushdown of cells is never empty")

    @property
    def top(self) -> Tuple[str, Any]:
        return self.cells[0]

    def __len__(self) -> int:
        return len(self.cells)

    def __str__(self) -> str:
        return "[" + " ".join(f"({symbol}, {config})" for symbol, config in self.cells) + "]"


Configuration = Union[Atom, Int, Str, Tree, Focus, Pair, PairSeq]
InputElement = Union[Unit, Int, Str, Tree, Pair]
