"""Predicate, instruction and encoding symbols as uniform first-order terms."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Tuple

from models.tree import Tree

_QUALIFIERS = ("left", "right")


@dataclass(frozen=True)
class Op:
    """A symbol with term arguments: ``top=a`` is ``Op("top=", (Op("a"),))``,
    ``push(#, dec)`` is ``Op("push", (Op("#"), Op("dec")))``."""

    name: str
    args: Tuple["Op", ...] = ()

    @property
    def arity(self) -> int:
        return len(self.args)

    def arg_name(self, index: int = 0) -> str:
        return self.args[index].name

    def arg_int(self, index: int = 0) -> int:
        return int(self.args[index].name)

    def __str__(self) -> str:
        if not self.args:
            return self.name
        if self.name.endswith("=") and self.arity == 1:
            return f"{self.name}{self.args[0]}"
        if self.name == "pair":
            return f"({', '.join(str(arg) for arg in self.args)})"
        if self.name in _QUALIFIERS and self.arity == 1:
            return f"{self.name}.{self.args[0]}"
        if self.name == "set":
            return "{" + ", ".join(str(arg) for arg in self.args) + "}"
        if self.name == "rank":
            return f"{self.args[0]}:{self.args[1]}"
        return f"{self.name}({', '.join(str(arg) for arg in self.args)})"


def sym(name: str) -> Op:
    return Op(name)


def eq_pred(name: str, value: object) -> Op:
    """Predicate of the ``name=value`` family, e.g. ``eq_pred("top", "a")``."""
    return Op(f"{name}=", (Op(str(value)),))


def pair(left: Op, right: Op) -> Op:
    return Op("pair", (left, right))


def alphabet_op(symbols, ranked: bool = False) -> Op:
    """Encoding literal ``{a, b}`` or, for trees, ``{sigma:2, a:0}``."""
    if ranked:
        items = tuple(Op("rank", (Op(name), Op(str(rank)))) for name, rank in sorted(symbols.items()))
    else:
        items = tuple(Op(name) for name in sorted(symbols))
    return Op("set", items)


def alphabet_of(encoding: Op) -> dict:
    """Decode a ``set`` literal into ``{symbol: rank}`` (rank None when unranked)."""
    result = {}
    for item in encoding.args:
        if item.name == "rank":
            result[item.arg_name(0)] = item.arg_int(1)
        else:
            result[item.name] = None
    return result


def term_to_tree(term: Op) -> Tree:
    return Tree(term.name, tuple(term_to_tree(arg) for arg in term.args))


def tree_to_term(tree: Tree) -> Op:
    return Op(tree.label, tuple(tree_to_term(child) for child in tree.children))
