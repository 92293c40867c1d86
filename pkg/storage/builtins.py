"""The built-in storage types: trivial, pushdown, counter, count-down, one-way,
tree, tree-walk and tree-pushdown."""
from __future__ import annotations

import re
from dataclasses import dataclass
from itertools import product
from typing import Iterator, Optional, Tuple

from config.constants import BUILTIN_STORAGE, DEFAULT_COUNTER_SYMBOL
from models.errors import ValidationError
from models.tree import Tree, enumerate_trees, is_well_ranked
from storage.base import InputKind, StorageType
from storage.configurations import UNIT, Atom, Focus, Int, Str, Unit
from storage.symbols import Op, alphabet_of, term_to_tree

_VARIABLE = re.compile(r"^y(\d+)$")


def _is_index(op: Op) -> bool:
    return not op.args and op.name.isdigit() and int(op.name) >= 1


def _is_symbol(op: Op) -> bool:
    return not op.args


@dataclass(frozen=True)
class TrivialStorage(StorageType):
    """S0: one configuration, no predicates, the identity instruction."""

    noetherian = False

    @property
    def expr(self) -> str:
        return "s0"

    def knows_predicate(self, p: Op) -> bool:
        return False

    def knows_instruction(self, f: Op) -> bool:
        return f == Op("id")

    def knows_encoding(self, e: Op) -> bool:
        return e == Op("en")

    def test(self, p: Op, c) -> bool:
        raise ValidationError(f"S0 has no predicate '{p}'")

    def apply(self, f: Op, c):
        return c

    def encode(self, e: Op, u):
        return Atom("c0") if isinstance(u, Unit) else None

    def input_kind(self, e: Op) -> InputKind:
        return InputKind.UNIT

    def identity(self) -> Optional[Op]:
        return Op("id")

    @property
    def instructions(self) -> Tuple[str, ...]:
        return ("id",)

    @property
    def encodings(self) -> Tuple[str, ...]:
        return ("en",)


@dataclass(frozen=True)
class PushdownStorage(StorageType):
    """Pushdown over an open alphabet Γ, top at the left, never empty.

    ``symbol`` restricts Γ to a single symbol (the counter).
    """

    symbol: Optional[str] = None

    noetherian = False

    @property
    def expr(self) -> str:
        if self.symbol is None:
            return "pushdown"
        if self.symbol == DEFAULT_COUNTER_SYMBOL:
            return "counter"
        return f"counter({self.symbol})"

    def _allowed(self, op: Op) -> bool:
        return _is_symbol(op) and (self.symbol is None or op.name == self.symbol)

    def knows_predicate(self, p: Op) -> bool:
        if p.name == "top=":
            return p.arity == 1 and self._allowed(p.args[0])
        return p == Op("bottom")

    def knows_instruction(self, f: Op) -> bool:
        if f.name == "push":
            return f.arity == 1 and self._allowed(f.args[0])
        if f.name == "stay":
            return f.arity == 0 or (f.arity == 1 and self._allowed(f.args[0]))
        return f == Op("pop")

    def knows_encoding(self, e: Op) -> bool:
        if e.name == "unary":
            return e.arity == 2 and self._allowed(e.args[0]) and self._allowed(e.args[1])
        return self._allowed(e) and e.name not in ("en",)

    def test(self, p: Op, c: Str) -> bool:
        if p.name == "top=":
            return c.symbols[0] == p.arg_name()
        if p.name == "bottom":
            return len(c.symbols) == 1
        raise ValidationError(f"Pushdown has no predicate '{p}'")

    def apply(self, f: Op, c: Str) -> Optional[Str]:
        if f.name == "push":
            return Str((f.arg_name(),) + c.symbols)
        if f.name == "pop":
            return Str(c.symbols[1:]) if len(c.symbols) > 1 else None
        if f.name == "stay":
            if f.arity == 0:
                return c
            return Str((f.arg_name(),) + c.symbols[1:])
        raise ValidationError(f"Pushdown has no instruction '{f}'")

    def encode(self, e: Op, u) -> Optional[Str]:
        if e.name == "unary":
            if not isinstance(u, Int) or u.value < 0:
                return None
            return Str((e.arg_name(0),) * u.value + (e.arg_name(1),))
        return Str((e.name,)) if isinstance(u, Unit) else None

    def input_kind(self, e: Op) -> InputKind:
        return InputKind.INT if e.name == "unary" else InputKind.UNIT

    def inputs(self, e: Op, max_size: int) -> Iterator:
        if e.name == "unary":
            yield from (Int(n) for n in range(max_size + 1))
        else:
            yield UNIT

    def exclusive(self, p: Op, q: Op) -> bool:
        return p.name == "top=" and q.name == "top=" and p.args != q.args

    def identity(self) -> Optional[Op]:
        return Op("stay")

    @property
    def predicates(self) -> Tuple[str, ...]:
        return ("top=γ", "bottom")

    @property
    def instructions(self) -> Tuple[str, ...]:
        return ("push(γ)", "pop", "stay(γ)", "stay")

    @property
    def encodings(self) -> Tuple[str, ...]:
        return ("γ", "unary(a, γ)")


@dataclass(frozen=True)
class CountdownStorage(StorageType):
    """Nonnegative integers counted down to zero."""

    noetherian = True

    @property
    def expr(self) -> str:
        return "countdown"

    def knows_predicate(self, p: Op) -> bool:
        return p == Op("null")

    def knows_instruction(self, f: Op) -> bool:
        return f == Op("dec")

    def knows_encoding(self, e: Op) -> bool:
        return e == Op("en")

    def test(self, p: Op, c: Int) -> bool:
        return c.value == 0

    def apply(self, f: Op, c: Int) -> Optional[Int]:
        return Int(c.value - 1) if c.value > 0 else None

    def encode(self, e: Op, u) -> Optional[Int]:
        return u if isinstance(u, Int) and u.value >= 0 else None

    def input_kind(self, e: Op) -> InputKind:
        return InputKind.INT

    def inputs(self, e: Op, max_size: int) -> Iterator[Int]:
        yield from (Int(n) for n in range(max_size + 1))

    @property
    def predicates(self) -> Tuple[str, ...]:
        return ("null",)

    @property
    def instructions(self) -> Tuple[str, ...]:
        return ("dec",)

    @property
    def encodings(self) -> Tuple[str, ...]:
        return ("en",)


@dataclass(frozen=True)
class OnewayStorage(StorageType):
    """One-way input tape: strings read from the left."""

    noetherian = True

    @property
    def expr(self) -> str:
        return "oneway"

    def knows_predicate(self, p: Op) -> bool:
        if p.name == "first=":
            return p.arity == 1 and _is_symbol(p.args[0])
        return p == Op("empty")

    def knows_instruction(self, f: Op) -> bool:
        return f == Op("read")

    def knows_encoding(self, e: Op) -> bool:
        return e.name == "set" and all(_is_symbol(arg) for arg in e.args)

    def test(self, p: Op, c: Str) -> bool:
        if p.name == "first=":
            return bool(c.symbols) and c.symbols[0] == p.arg_name()
        return not c.symbols

    def apply(self, f: Op, c: Str) -> Optional[Str]:
        return Str(c.symbols[1:]) if c.symbols else None

    def encode(self, e: Op, u) -> Optional[Str]:
        if not isinstance(u, Str):
            return None
        alphabet = alphabet_of(e)
        return u if all(symbol in alphabet for symbol in u.symbols) else None

    def input_kind(self, e: Op) -> InputKind:
        return InputKind.STR

    def inputs(self, e: Op, max_size: int) -> Iterator[Str]:
        alphabet = sorted(alphabet_of(e))
        for length in range(max_size + 1):
            for word in product(alphabet, repeat=length):
                yield Str(tuple(word))

    def coerce_input(self, e: Op, u):
        if isinstance(u, Unit):
            return Str(())
        return u

    def exclusive(self, p: Op, q: Op) -> bool:
        if p.name == "first=" and q.name == "first=":
            return p.args != q.args
        return {p.name, q.name} == {"first=", "empty"}

    @property
    def predicates(self) -> Tuple[str, ...]:
        return ("first=a", "empty")

    @property
    def instructions(self) -> Tuple[str, ...]:
        return ("read",)

    @property
    def encodings(self) -> Tuple[str, ...]:
        return ("{a, b, ...}",)


class _RankedInput:
    """Mixin for storage types encoding trees over a ranked alphabet {sigma:2, a:0}."""

    def knows_encoding(self, e: Op) -> bool:
        return e.name == "set" and all(arg.name == "rank" for arg in e.args)

    def _accepts_tree(self, e: Op, u) -> bool:
        return isinstance(u, Tree) and is_well_ranked(u, alphabet_of(e))

    def input_kind(self, e: Op) -> InputKind:
        return InputKind.TREE

    def inputs(self, e: Op, max_size: int) -> Iterator[Tree]:
        yield from enumerate_trees(alphabet_of(e), max_size)


@dataclass(frozen=True)
class TreeStorage(_RankedInput, StorageType):
    """Trees consumed top-down by selecting subtrees."""

    noetherian = True

    @property
    def expr(self) -> str:
        return "tree"

    def knows_predicate(self, p: Op) -> bool:
        return p.name == "root=" and p.arity == 1 and _is_symbol(p.args[0])

    def knows_instruction(self, f: Op) -> bool:
        return f.name == "sel" and f.arity == 1 and _is_index(f.args[0])

    def test(self, p: Op, c: Tree) -> bool:
        return c.label == p.arg_name()

    def apply(self, f: Op, c: Tree) -> Optional[Tree]:
        index = f.arg_int()
        return c.children[index - 1] if index <= c.rank else None

    def encode(self, e: Op, u) -> Optional[Tree]:
        return u if self._accepts_tree(e, u) else None

    def exclusive(self, p: Op, q: Op) -> bool:
        return p.args != q.args

    @property
    def predicates(self) -> Tuple[str, ...]:
        return ("root=σ",)

    @property
    def instructions(self) -> Tuple[str, ...]:
        return ("sel(i)",)

    @property
    def encodings(self) -> Tuple[str, ...]:
        return ("{σ:k, ...}",)


@dataclass(frozen=True)
class TreewalkStorage(_RankedInput, StorageType):
    """A pointer walking up and down a fixed tree."""

    noetherian = False

    @property
    def expr(self) -> str:
        return "treewalk"

    def knows_predicate(self, p: Op) -> bool:
        if p.name == "label=":
            return p.arity == 1 and _is_symbol(p.args[0])
        if p.name == "son=":
            return p.arity == 1 and _is_index(p.args[0])
        return p == Op("root")

    def knows_instruction(self, f: Op) -> bool:
        if f.name == "down":
            return f.arity == 1 and _is_index(f.args[0])
        return f in (Op("up"), Op("stay"))

    def test(self, p: Op, c: Focus) -> bool:
        if p.name == "label=":
            return c.node.label == p.arg_name()
        if p.name == "son=":
            return bool(c.path) and c.path[-1] == p.arg_int()
        return not c.path

    def apply(self, f: Op, c: Focus) -> Optional[Focus]:
        if f.name == "down":
            index = f.arg_int()
            if index > c.node.rank:
                return None
            return Focus(c.tree, c.path + (index,))
        if f.name == "up":
            return Focus(c.tree, c.path[:-1]) if c.path else None
        return c

    def encode(self, e: Op, u) -> Optional[Focus]:
        return Focus(u, ()) if self._accepts_tree(e, u) else None

    def exclusive(self, p: Op, q: Op) -> bool:
        names = {p.name, q.name}
        if p.name == q.name and p.name in ("label=", "son="):
            return p.args != q.args
        return names == {"root", "son="}

    def identity(self) -> Optional[Op]:
        return Op("stay")

    @property
    def predicates(self) -> Tuple[str, ...]:
        return ("label=σ", "root", "son=i")

    @property
    def instructions(self) -> Tuple[str, ...]:
        return ("down(i)", "up", "stay")

    @property
    def encodings(self) -> Tuple[str, ...]:
        return ("{σ:k, ...}",)


@dataclass(frozen=True)
class TreePushdownStorage(StorageType):
    """Trees rewritten at the root by substituting subtrees into a pattern."""

    noetherian = False

    @property
    def expr(self) -> str:
        return "treepushdown"

    def knows_predicate(self, p: Op) -> bool:
        return p.name == "root=" and p.arity == 1 and _is_symbol(p.args[0])

    def knows_instruction(self, f: Op) -> bool:
        return f.name == "expand" and f.arity == 1

    def knows_encoding(self, e: Op) -> bool:
        return _is_symbol(e) and not _VARIABLE.match(e.name)

    def test(self, p: Op, c: Tree) -> bool:
        return c.label == p.arg_name()

    def apply(self, f: Op, c: Tree) -> Optional[Tree]:
        return _substitute(term_to_tree(f.args[0]), c.children)

    def encode(self, e: Op, u) -> Optional[Tree]:
        return Tree(e.name) if isinstance(u, Unit) else None

    def input_kind(self, e: Op) -> InputKind:
        return InputKind.UNIT

    def exclusive(self, p: Op, q: Op) -> bool:
        return p.args != q.args

    @property
    def predicates(self) -> Tuple[str, ...]:
        return ("root=σ",)

    @property
    def instructions(self) -> Tuple[str, ...]:
        return ("expand(ζ)",)

    @property
    def encodings(self) -> Tuple[str, ...]:
        return ("σ",)


def _substitute(pattern: Tree, subtrees: Tuple[Tree, ...]) -> Optional[Tree]:
    """Replace variable leaves y_i by the i-th subtree; None if some y_i has no subtree."""
    match = _VARIABLE.match(pattern.label)
    if match and not pattern.children:
        index = int(match.group(1))
        return subtrees[index - 1] if 1 <= index <= len(subtrees) else None
    children = []
    for child in pattern.children:
        replaced = _substitute(child, subtrees)
        if replaced is None:
            return None
        children.append(replaced)
    return Tree(pattern.label, tuple(children))


_FACTORIES = {
    "S0": lambda **_: TrivialStorage(),
    "Pushdown": lambda **_: PushdownStorage(),
    "Counter": lambda symbol=DEFAULT_COUNTER_SYMBOL, **_: PushdownStorage(symbol=symbol),
    "Countdown": lambda **_: CountdownStorage(),
    "Oneway": lambda **_: OnewayStorage(),
    "Tree": lambda **_: TreeStorage(),
    "Treewalk": lambda **_: TreewalkStorage(),
    "Treepushdown": lambda **_: TreePushdownStorage(),
}


def builtin(name: str, **params) -> StorageType:
    """Return the built-in storage type called ``name`` (case-insensitive)."""
    canonical = BUILTIN_STORAGE.get(name.lower(), name)
    if canonical not in _FACTORIES:
        raise ValidationError(f"Unknown storage type '{name}'")
    return _FACTORIES[canonical](**params)
