"""The storage type abstraction (C, P, F, I, E, m) and the operations on it."""
from __future__ import annotations

from abc import ABC, abstractmethod
from enum import Enum
from typing import Dict, Iterable, Iterator, Optional, Sequence, Tuple

from models.errors import ValidationError
from storage.configurations import UNIT, Configuration, InputElement
from storage.expressions import Test, evaluate
from storage.symbols import Op


class InputKind(str, Enum):
    UNIT = "unit"
    INT = "int"
    STR = "str"
    TREE = "tree"
    PAIR = "pair"


class StorageType(ABC):
    """Base class for all storage types.

    Symbol sets are families realized lazily: any symbol drawn from a grammar is
    admitted when ``knows_*`` accepts it, so no global alphabet is needed up front.
    Subclasses are frozen dataclasses; the interpreter is pure.
    """

    noetherian: bool = False

    @property
    @abstractmethod
    def expr(self) -> str:
        """Text of the storage expression in grammar files."""

    @abstractmethod
    def knows_predicate(self, p: Op) -> bool: ...

    @abstractmethod
    def knows_instruction(self, f: Op) -> bool: ...

    @abstractmethod
    def knows_encoding(self, e: Op) -> bool: ...

    @abstractmethod
    def test(self, p: Op, c: Configuration) -> bool:
        """m(p)(c)."""

    @abstractmethod
    def apply(self, f: Op, c: Configuration) -> Optional[Configuration]:
        """m(f)(c), None where undefined."""

    @abstractmethod
    def encode(self, e: Op, u: InputElement) -> Optional[Configuration]:
        """m(e)(u), None where undefined."""

    @abstractmethod
    def input_kind(self, e: Op) -> InputKind: ...

    def inputs(self, e: Op, max_size: int) -> Iterator[InputElement]:
        """Input elements for encoding e in size order, up to max_size."""
        if self.input_kind(e) == InputKind.UNIT:
            yield UNIT
            return
        raise ValidationError(f"Storage {self.expr} cannot enumerate inputs for encoding {e}")

    def coerce_input(self, e: Op, u: InputElement) -> InputElement:
        return u

    def exclusive(self, p: Op, q: Op) -> bool:
        """Declared exclusivity axiom: m(p)(c) and m(q)(c) are never both true."""
        return False

    def identity(self) -> Optional[Op]:
        """An instruction interpreted as the identity, if the type has one."""
        return None

    @property
    def predicates(self) -> Tuple[str, ...]:
        return ()

    @property
    def instructions(self) -> Tuple[str, ...]:
        return ()

    @property
    def encodings(self) -> Tuple[str, ...]:
        return ()

    @property
    def name(self) -> str:
        return self.expr

    def describe(self) -> Dict[str, object]:
        return {
            "name": self.expr,
            "predicates": list(self.predicates),
            "instructions": list(self.instructions),
            "encodings": list(self.encodings),
            "noetherian": self.noetherian,
            "identity": str(self.identity()) if self.identity() else None,
        }

    def __str__(self) -> str:
        return self.expr


def eval_test(t: Test, c: Configuration, s: StorageType) -> bool:
    return evaluate(t, lambda p: s.test(p, c))


def apply_instruction(f: Op, c: Configuration, s: StorageType) -> Optional[Configuration]:
    return s.apply(f, c)


def apply_chain(chain: Sequence[Op], c: Configuration, s: StorageType) -> Optional[Configuration]:
    """Apply f1;...;fk left to right; None as soon as one step is undefined."""
    for f in chain:
        c = s.apply(f, c)
        if c is None:
            return None
    return c


def encode(e: Op, u: InputElement, s: StorageType) -> Optional[Configuration]:
    return s.encode(e, u)


def require_predicate(s: StorageType, p: Op) -> None:
    if not s.knows_predicate(p):
        raise ValidationError(f"Unknown predicate symbol '{p}' for storage {s.expr}")


def require_instruction(s: StorageType, f: Op) -> None:
    if not s.knows_instruction(f):
        raise ValidationError(f"Unknown instruction symbol '{f}' for storage {s.expr}")


def reachable_configurations(
    s: StorageType,
    starts: Iterable[Configuration],
    chains: Iterable[Sequence[Op]],
    limit: int,
) -> Iterator[Configuration]:
    """Breadth-first closure of the start configurations under the given chains."""
    chains = [tuple(chain) for chain in chains]
    seen = set()
    frontier = []
    for c in starts:
        if c is not None and c not in seen:
            seen.add(c)
            frontier.append(c)
    while frontier and len(seen) <= limit:
        next_frontier = []
        for c in frontier:
            yield c
            for chain in chains:
                successor = apply_chain(chain, c, s)
                if successor is not None and successor not in seen and len(seen) <= limit:
                    seen.add(successor)
                    next_frontier.append(successor)
        frontier = next_frontier


def is_racceptor_deterministic_storage(s: StorageType, e: Op) -> bool:
    """S has an identity and the input set of encoding e is a singleton."""
    return s.identity() is not None and s.input_kind(e) == InputKind.UNIT
