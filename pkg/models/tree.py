"""Ranked trees: the tree configurations of storage types and the outputs of RT grammars."""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Dict, Iterator, List, Mapping, Optional, Sequence, Tuple

from config.constants import EPSILON


@dataclass(frozen=True)
class Tree:
    """A node label with an ordered tuple of subtrees; the rank is the number of children."""

    label: str
    children: Tuple["Tree", ...] = ()

    @property
    def rank(self) -> int:
        return len(self.children)

    @property
    def size(self) -> int:
        return 1 + sum(child.size for child in self.children)

    @property
    def depth(self) -> int:
        return 1 + max((child.depth for child in self.children), default=0)

    def subtree(self, path: Sequence[int]) -> Optional["Tree"]:
        """Follow 1-based child indices from the root; None if the path leaves the tree."""
        node = self
        for index in path:
            if not 1 <= index <= node.rank:
                return None
            node = node.children[index - 1]
        return node

    def __str__(self) -> str:
        if not self.children:
            return self.label
        return f"{self.label}({', '.join(str(child) for child in self.children)})"


def leaf(label: str) -> Tree:
    return Tree(label)


def tree_yield(tree: Tree, epsilon: str = EPSILON) -> Tuple[str, ...]:
    """Frontier of the tree from left to right, with epsilon leaves erased."""
    if not tree.children:
        return () if tree.label == epsilon else (tree.label,)
    result: Tuple[str, ...] = ()
    for child in tree.children:
        result += tree_yield(child, epsilon)
    return result


def prefix_symbols(tree: Tree) -> Tuple[str, ...]:
    """Prefix (Polish) notation of the tree as a symbol sequence."""
    result = [tree.label]
    for child in tree.children:
        result.extend(prefix_symbols(child))
    return tuple(result)


def tree_from_prefix(symbols: Sequence[str], ranks: Mapping[str, int]) -> Tree:
    """Rebuild a tree from prefix notation; raises ValueError when the sequence is not well-ranked."""
    position = 0

    def build() -> Tree:
        nonlocal position
        if position >= len(symbols):
            raise ValueError(f"Truncated prefix term {' '.join(symbols)}")
        label = symbols[position]
        position += 1
        if label not in ranks:
            raise ValueError(f"Symbol '{label}' has no declared rank")
        return Tree(label, tuple(build() for _ in range(ranks[label])))

    tree = build()
    if position != len(symbols):
        raise ValueError(f"Trailing symbols after prefix term {' '.join(symbols)}")
    return tree


def is_well_ranked(tree: Tree, ranks: Mapping[str, int]) -> bool:
    if ranks.get(tree.label) != tree.rank:
        return False
    return all(is_well_ranked(child, ranks) for child in tree.children)


def enumerate_trees(ranks: Mapping[str, int], max_size: int) -> Iterator[Tree]:
    """All well-ranked trees over the alphabet, by increasing size, labels in sorted order."""
    alphabet = tuple(sorted(ranks.items()))
    for size in range(1, max_size + 1):
        yield from _trees_of_size(alphabet, size)


@lru_cache(maxsize=None)
def _trees_of_size(alphabet: Tuple[Tuple[str, int], ...], size: int) -> Tuple[Tree, ...]:
    found: List[Tree] = []
    for label, rank in alphabet:
        if rank == 0:
            if size == 1:
                found.append(Tree(label))
            continue
        for sizes in compositions(size - 1, rank):
            pools = [_trees_of_size(alphabet, part) for part in sizes]
            for children in product(*pools):
                found.append(Tree(label, tuple(children)))
    return tuple(found)


def compositions(total: int, parts: int) -> Iterator[Tuple[int, ...]]:
    if parts == 1:
        if total >= 1:
            yield (total,)
        return
    for first in range(1, total - parts + 2):
        for rest in compositions(total - first, parts - 1):
            yield (first,) + rest


def ranks_of(trees: Sequence[Tree]) -> Dict[str, int]:
    """Collect the rank of every label; inconsistent use of a label raises ValueError."""
    ranks: Dict[str, int] = {}

    def visit(node: Tree) -> None:
        known = ranks.setdefault(node.label, node.rank)
        if known != node.rank:
            raise ValueError(f"Label '{node.label}' used with ranks {known} and {node.rank}")
        for child in node.children:
            visit(child)

    for tree in trees:
        visit(tree)
    return ranks
