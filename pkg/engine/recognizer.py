"""Incremental recognizers for REG(S) grammars and for finite path sets.

A recognizer state is a frozen set of items, closed under λ-moves. Items are
``_At`` (about to rewrite A at c), ``_Reading`` (part way through the word of
a rule) and HALT (a terminal-only rule finished, so the store is empty).
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import FrozenSet, Hashable, Iterable, Optional, Protocol, Sequence, Set

from config.settings import settings
from grammar.model import Grammar, GrammarClass
from models.errors import FrontierOverflow, PreconditionError
from storage.base import apply_chain, eval_test
from utils.logger import get_logger

logger = get_logger(__name__)

HALT = "HALT"


@dataclass(frozen=True)
class _At:
    nonterminal: str
    configuration: Hashable


@dataclass(frozen=True)
class _Reading:
    rule_index: int
    read: int
    target: Optional[_At]


State = FrozenSet


class Recognizer(Protocol):
    def start(self) -> State: ...

    def step(self, state: State, symbol: str) -> State: ...

    def accepts(self, state: State) -> bool: ...


def accepts_word(recognizer: Recognizer, word: Sequence[str]) -> bool:
    state = recognizer.start()
    for symbol in word:
        state = recognizer.step(state, symbol)
        if not state:
            return False
    return recognizer.accepts(state)


class RegRecognizer:
    """Reads words with a REG grammar, by empty store or by final state.

    With ``finals`` given, a state accepts when it holds A(c) for a final A;
    otherwise it accepts when a terminal-only rule has finished.
    """

    def __init__(
        self,
        g: Grammar,
        finals: Optional[FrozenSet[str]] = None,
        inputs: Optional[Iterable] = None,
        max_items: Optional[int] = None,
    ) -> None:
        if g.grammar_class != GrammarClass.REG:
            raise PreconditionError("recognizers read REG grammars", grammar=str(g))
        self.grammar = g
        self.finals = finals
        self.max_items = max_items or settings.MAX_FORMS
        self._words = [rule.terminals for rule in g.rules]
        self._inputs = inputs

    def _initial_items(self) -> Iterable[_At]:
        s, e = self.grammar.storage, self.grammar.encoding
        if self._inputs is not None:
            for u in self._inputs:
                c = s.encode(e, s.coerce_input(e, u))
                if c is not None:
                    yield _At(self.grammar.initial, c)
            return
        from engine.search import enumerate_inputs

        for _, c in enumerate_inputs(self.grammar, settings.MAX_INPUT):
            yield _At(self.grammar.initial, c)

    def start(self) -> State:
        return self._closure(set(self._initial_items()))

    def _expand(self, item: _At) -> Iterable:
        g = self.grammar
        for index, rule in g.rules_for(item.nonterminal):
            if not eval_test(rule.test, item.configuration, g.storage):
                continue
            target = None
            if rule.calls:
                call = rule.calls[0]
                moved = apply_chain(call.chain, item.configuration, g.storage)
                if moved is None:
                    continue
                target = _At(call.nonterminal, moved)
            if self._words[index]:
                yield _Reading(index, 0, target)
            else:
                yield target if target is not None else HALT

    def _closure(self, items: Set) -> State:
        result = set(items)
        stack = [item for item in items if isinstance(item, _At)]
        while stack:
            for new in self._expand(stack.pop()):
                if new in result:
                    continue
                result.add(new)
                if isinstance(new, _At):
                    stack.append(new)
                if len(result) > self.max_items:
                    raise FrontierOverflow(
                        f"λ-closure exceeds {self.max_items} items",
                        grammar=str(self.grammar),
                    )
        return frozenset(result)

    def step(self, state: State, symbol: str) -> State:
        moved: Set = set()
        for item in state:
            if not isinstance(item, _Reading):
                continue
            word = self._words[item.rule_index]
            if word[item.read] != symbol:
                continue
            if item.read + 1 < len(word):
                moved.add(_Reading(item.rule_index, item.read + 1, item.target))
            else:
                moved.add(item.target if item.target is not None else HALT)
        return self._closure(moved)

    def accepts(self, state: State) -> bool:
        if self.finals is None:
            return HALT in state
        return any(isinstance(item, _At) and item.nonterminal in self.finals for item in state)

    def accepts_word(self, word: Sequence[str]) -> bool:
        return accepts_word(self, word)


class FiniteRecognizer:
    """Prefix-tracking recognizer of an explicit finite set of words."""

    def __init__(self, words: Iterable[Sequence[str]]) -> None:
        self.words = frozenset(tuple(word) for word in words)
        self._prefixes = {word[:cut] for word in self.words for cut in range(len(word) + 1)}

    def start(self) -> State:
        return frozenset({()}) if () in self._prefixes else frozenset()

    def step(self, state: State, symbol: str) -> State:
        return frozenset(prefix + (symbol,) for prefix in state if prefix + (symbol,) in self._prefixes)

    def accepts(self, state: State) -> bool:
        return any(prefix in self.words for prefix in state)

    def accepts_word(self, word: Sequence[str]) -> bool:
        return accepts_word(self, word)


def recognizer_for(g: Grammar) -> RegRecognizer:
    """An empty-store recognizer of L(G); CF grammars go through their pushdown automaton."""
    if g.grammar_class == GrammarClass.REG:
        return RegRecognizer(g)
    if g.grammar_class == GrammarClass.RT:
        raise PreconditionError("tree grammars have no string recognizer", grammar=str(g))
    from constructions.pushdown import to_pushdown_automaton
    from grammar.normal_forms import normalize_cfext

    logger.info(f"{g}: reading through its pushdown automaton")
    return RegRecognizer(to_pushdown_automaton(normalize_cfext(g)))
