"""Grammars with storage: rules, right-hand sides and sentential forms."""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Any, Dict, Iterator, List, Optional, Tuple, Union

from config.constants import EPSILON
from storage.base import StorageType
from storage.expressions import TRUE, Test
from storage.symbols import Op


class GrammarClass(str, Enum):
    CF = "CF"
    CF_EXT = "CF_ext"
    REG = "REG"
    RT = "RT"

    @classmethod
    def parse(cls, text: str) -> "GrammarClass":
        for member in cls:
            if member.value.lower() == text.lower():
                return member
        raise ValueError(f"Unknown grammar class '{text}'")


@dataclass(frozen=True)
class Call:
    """Nonterminal occurrence B(f1;...;fk) in a right-hand side."""

    nonterminal: str
    chain: Tuple[Op, ...]

    def __str__(self) -> str:
        return f"{self.nonterminal}({';'.join(str(f) for f in self.chain)})"


# Terminals are plain strings. RT right-hand sides are trees in prefix order,
# calls standing at leaf positions.
RhsItem = Union[str, Call]


@dataclass(frozen=True)
class Rule:
    lhs: str
    test: Test = TRUE
    rhs: Tuple[RhsItem, ...] = ()

    @property
    def calls(self) -> Tuple[Call, ...]:
        return tuple(item for item in self.rhs if isinstance(item, Call))

    @property
    def terminals(self) -> Tuple[str, ...]:
        return tuple(item for item in self.rhs if isinstance(item, str))

    @property
    def instructions(self) -> Tuple[Op, ...]:
        return tuple(f for call in self.calls for f in call.chain)

    def __str__(self) -> str:
        body = " ".join(str(item) for item in self.rhs) or "λ"
        if self.test == TRUE:
            return f"{self.lhs} → {body}"
        return f"{self.lhs} → if {self.test} then {body}"


@dataclass(frozen=True)
class Grammar:
    """G = (N, e, Δ, A_in, R) over a storage type, tagged with its class.

    ``terminals`` pairs each terminal with its rank (None outside RT).
    """

    storage: StorageType
    nonterminals: Tuple[str, ...]
    terminals: Tuple[Tuple[str, Optional[int]], ...]
    initial: str
    encoding: Op
    rules: Tuple[Rule, ...]
    grammar_class: GrammarClass = GrammarClass.CF
    name: str = field(default="", compare=False)

    @property
    def terminal_names(self) -> Tuple[str, ...]:
        return tuple(symbol for symbol, _ in self.terminals)

    @property
    def ranks(self) -> Dict[str, int]:
        return {symbol: rank for symbol, rank in self.terminals if rank is not None}

    @property
    def is_tree_grammar(self) -> bool:
        return self.grammar_class == GrammarClass.RT

    def is_nonterminal(self, symbol: str) -> bool:
        return symbol in self.nonterminals

    def is_terminal(self, symbol: str) -> bool:
        return symbol in self.terminal_names

    def rules_for(self, nonterminal: str) -> List[Tuple[int, Rule]]:
        return rules_by_lhs(self).get(nonterminal, [])

    def with_rules(self, rules, **changes: Any) -> "Grammar":
        return replace(self, rules=tuple(rules), **changes)

    def renamed(self, name: str) -> "Grammar":
        return replace(self, name=name)

    def __str__(self) -> str:
        return self.name or f"<{self.grammar_class.value}({self.storage.expr}) grammar>"


_INDEX_CACHE: Dict[int, Tuple["Grammar", Dict[str, List[Tuple[int, Rule]]]]] = {}


def rules_by_lhs(g: Grammar) -> Dict[str, List[Tuple[int, Rule]]]:
    """Rules grouped by left-hand side, with their source indices."""
    cached = _INDEX_CACHE.get(id(g))
    if cached is not None and cached[0] is g:
        return cached[1]
    index: Dict[str, List[Tuple[int, Rule]]] = {}
    for position, rule in enumerate(g.rules):
        index.setdefault(rule.lhs, []).append((position, rule))
    if len(_INDEX_CACHE) > 256:
        _INDEX_CACHE.clear()
    _INDEX_CACHE[id(g)] = (g, index)
    return index


def used_nonterminals(rules) -> List[str]:
    found: List[str] = []
    for rule in rules:
        for symbol in [rule.lhs] + [call.nonterminal for call in rule.calls]:
            if symbol not in found:
                found.append(symbol)
    return found


def iter_instructions(g: Grammar) -> Iterator[Op]:
    for rule in g.rules:
        yield from rule.instructions


def terminal_table(symbols, ranks: Optional[Dict[str, int]] = None) -> Tuple[Tuple[str, Optional[int]], ...]:
    ranks = ranks or {}
    return tuple((symbol, ranks.get(symbol)) for symbol in symbols)


def is_tail_call(item: RhsItem, storage: StorageType) -> bool:
    """A call whose chain is the storage identity, as in the tails of CF_ext rules."""
    identity = storage.identity()
    return isinstance(item, Call) and identity is not None and item.chain == (identity,)


@dataclass(frozen=True)
class Instance:
    """A nonterminal carrying a configuration inside a sentential form."""

    nonterminal: str
    configuration: Any

    def __str__(self) -> str:
        return f"{self.nonterminal}({self.configuration})"


SententialForm = Tuple[Union[str, Instance], ...]


def format_form(form: SententialForm) -> str:
    if not form:
        return "λ"
    return " ".join(str(item) for item in form)


def epsilon_free(symbols) -> Tuple[str, ...]:
    return tuple(symbol for symbol in symbols if symbol != EPSILON)
