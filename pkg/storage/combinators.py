"""Storage combinators: added identity, product, pushdown-of and look-ahead."""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product as cartesian
from typing import Any, FrozenSet, Iterable, Iterator, Mapping, Optional, Tuple, Union

from config.constants import DEFAULT_COUNTER_SYMBOL, FRESH_SEPARATOR
from models.errors import LookaheadUnknown, ValidationError
from storage.base import InputKind, StorageType
from storage.builtins import PushdownStorage, TrivialStorage
from storage.configurations import UNIT, Atom, Pair, PairSeq, Str
from storage.symbols import Op
from utils.caching import SynchronizedCache
from utils.logger import get_logger

logger = get_logger(__name__)

_SIDES = ("left", "right")


class _Delegating(StorageType):
    """Forwards everything not overridden to ``self.base``."""

    base: StorageType

    def knows_predicate(self, p: Op) -> bool:
        return self.base.knows_predicate(p)

    def knows_instruction(self, f: Op) -> bool:
        return self.base.knows_instruction(f)

    def knows_encoding(self, e: Op) -> bool:
        return self.base.knows_encoding(e)

    def test(self, p: Op, c) -> bool:
        return self.base.test(p, c)

    def apply(self, f: Op, c):
        return self.base.apply(f, c)

    def encode(self, e: Op, u):
        return self.base.encode(e, u)

    def input_kind(self, e: Op) -> InputKind:
        return self.base.input_kind(e)

    def inputs(self, e: Op, max_size: int) -> Iterator:
        return self.base.inputs(e, max_size)

    def coerce_input(self, e: Op, u):
        return self.base.coerce_input(e, u)

    def exclusive(self, p: Op, q: Op) -> bool:
        return self.base.exclusive(p, q)

    def identity(self) -> Optional[Op]:
        return self.base.identity()

    @property
    def predicates(self) -> Tuple[str, ...]:
        return self.base.predicates

    @property
    def instructions(self) -> Tuple[str, ...]:
        return self.base.instructions

    @property
    def encodings(self) -> Tuple[str, ...]:
        return self.base.encodings


# ============================================================================
# IDENTITY
# ============================================================================

@dataclass(frozen=True)
class WithIdentity(_Delegating):
    """S_id: S plus a new instruction interpreted as the identity.

    Never noetherian: the identity can be applied forever.
    """

    base: StorageType
    identity_name: str = "id"

    noetherian = False

    @property
    def expr(self) -> str:
        return f"{self.base.expr}+{self.identity_name}"

    def knows_instruction(self, f: Op) -> bool:
        return f == Op(self.identity_name) or self.base.knows_instruction(f)

    def apply(self, f: Op, c):
        if f == Op(self.identity_name):
            return c
        return self.base.apply(f, c)

    def identity(self) -> Optional[Op]:
        return Op(self.identity_name)

    @property
    def instructions(self) -> Tuple[str, ...]:
        return self.base.instructions + (self.identity_name,)


def with_identity(s: StorageType) -> WithIdentity:
    name = "id"
    counter = 0
    while s.knows_instruction(Op(name)):
        counter += 1
        name = f"id{FRESH_SEPARATOR}{counter}"
    return WithIdentity(s, name)


# ============================================================================
# PRODUCT
# ============================================================================

@dataclass(frozen=True)
class Product(StorageType):
    """S1 x S2 on pairs of configurations.

    Predicates are written ``left.p`` / ``right.p``; a bare ``p`` is accepted
    when exactly one side knows it. Instructions and encodings are pairs.
    """

    left: StorageType
    right: StorageType

    @property
    def noetherian(self) -> bool:
        return self.left.noetherian or self.right.noetherian

    @property
    def expr(self) -> str:
        return f"product({self.left.expr}, {self.right.expr})"

    def _sides(self):
        return (self.left, self.right)

    def resolve(self, p: Op) -> Optional[Tuple[int, Op]]:
        """Side index and inner predicate of p, or None when p is unknown or ambiguous."""
        if p.name in _SIDES and p.arity == 1:
            index = _SIDES.index(p.name)
            inner = p.args[0]
            return (index, inner) if self._sides()[index].knows_predicate(inner) else None
        owners = [index for index, side in enumerate(self._sides()) if side.knows_predicate(p)]
        return (owners[0], p) if len(owners) == 1 else None

    def qualify(self, p: Op) -> Op:
        resolved = self.resolve(p)
        if resolved is None:
            raise ValidationError(f"Predicate '{p}' is unknown or ambiguous for {self.expr}")
        index, inner = resolved
        return Op(_SIDES[index], (inner,))

    def knows_predicate(self, p: Op) -> bool:
        return self.resolve(p) is not None

    def knows_instruction(self, f: Op) -> bool:
        return (
            f.name == "pair"
            and f.arity == 2
            and self.left.knows_instruction(f.args[0])
            and self.right.knows_instruction(f.args[1])
        )

    def knows_encoding(self, e: Op) -> bool:
        return (
            e.name == "pair"
            and e.arity == 2
            and self.left.knows_encoding(e.args[0])
            and self.right.knows_encoding(e.args[1])
        )

    def test(self, p: Op, c: Pair) -> bool:
        index, inner = self.resolve(p)
        return self._sides()[index].test(inner, (c.left, c.right)[index])

    def apply(self, f: Op, c: Pair) -> Optional[Pair]:
        first = self.left.apply(f.args[0], c.left)
        if first is None:
            return None
        second = self.right.apply(f.args[1], c.right)
        if second is None:
            return None
        return Pair(first, second)

    def _kinds(self, e: Op) -> Tuple[InputKind, InputKind]:
        return self.left.input_kind(e.args[0]), self.right.input_kind(e.args[1])

    def input_kind(self, e: Op) -> InputKind:
        left_kind, right_kind = self._kinds(e)
        if left_kind == InputKind.UNIT:
            return right_kind
        if right_kind == InputKind.UNIT:
            return left_kind
        return InputKind.PAIR

    def _split(self, e: Op, u) -> Tuple[Any, Any]:
        left_kind, right_kind = self._kinds(e)
        if left_kind == InputKind.UNIT and right_kind == InputKind.UNIT:
            return UNIT, UNIT
        if left_kind == InputKind.UNIT:
            return UNIT, u
        if right_kind == InputKind.UNIT:
            return u, UNIT
        if isinstance(u, Pair):
            return u.left, u.right
        return None, None

    def encode(self, e: Op, u) -> Optional[Pair]:
        left_input, right_input = self._split(e, u)
        if left_input is None:
            return None
        first = self.left.encode(e.args[0], self.left.coerce_input(e.args[0], left_input))
        second = self.right.encode(e.args[1], self.right.coerce_input(e.args[1], right_input))
        if first is None or second is None:
            return None
        return Pair(first, second)

    def inputs(self, e: Op, max_size: int) -> Iterator:
        left_kind, right_kind = self._kinds(e)
        if left_kind == InputKind.UNIT:
            yield from self.right.inputs(e.args[1], max_size)
        elif right_kind == InputKind.UNIT:
            yield from self.left.inputs(e.args[0], max_size)
        else:
            lefts = list(self.left.inputs(e.args[0], max_size))
            rights = list(self.right.inputs(e.args[1], max_size))
            for u1, u2 in cartesian(lefts, rights):
                yield Pair(u1, u2)

    def coerce_input(self, e: Op, u):
        if self.input_kind(e) == InputKind.UNIT:
            return UNIT
        return u

    def exclusive(self, p: Op, q: Op) -> bool:
        first, second = self.resolve(p), self.resolve(q)
        if first is None or second is None or first[0] != second[0]:
            return False
        return self._sides()[first[0]].exclusive(first[1], second[1])

    def identity(self) -> Optional[Op]:
        left_id, right_id = self.left.identity(), self.right.identity()
        if left_id is None or right_id is None:
            return None
        return Op("pair", (left_id, right_id))

    @property
    def predicates(self) -> Tuple[str, ...]:
        return tuple(f"left.{p}" for p in self.left.predicates) + tuple(
            f"right.{p}" for p in self.right.predicates
        )

    @property
    def instructions(self) -> Tuple[str, ...]:
        return ("(f1, f2)",)

    @property
    def encodings(self) -> Tuple[str, ...]:
        return ("(e1, e2)",)


def product(s1: StorageType, s2: StorageType) -> Product:
    return Product(s1, s2)


# ============================================================================
# PUSHDOWN OF S
# ============================================================================

@dataclass(frozen=True)
class PushdownOf(StorageType):
    """Pd(S): a nonempty pushdown whose cells hold a symbol and an S-configuration.

    ``symbol`` fixes Γ to one symbol (the pure pushdown of S); ``stayf`` enables
    the optional stay(γ, f) family.
    """

    base: StorageType
    symbol: Optional[str] = None
    stayf: bool = False

    noetherian = False

    @property
    def expr(self) -> str:
        if self.symbol == DEFAULT_COUNTER_SYMBOL:
            return f"pdp({self.base.expr})"
        if self.symbol is not None:
            return f"pdp({self.base.expr}, {self.symbol})"
        if self.stayf:
            return f"pd({self.base.expr}, stayf)"
        return f"pd({self.base.expr})"

    def _allowed(self, op: Op) -> bool:
        return not op.args and (self.symbol is None or op.name == self.symbol)

    def knows_predicate(self, p: Op) -> bool:
        if p.name == "top=":
            return p.arity == 1 and self._allowed(p.args[0])
        if p.name == "test":
            return p.arity == 1 and self.base.knows_predicate(p.args[0])
        return p == Op("bottom")

    def knows_instruction(self, f: Op) -> bool:
        if f.name == "push":
            return f.arity == 2 and self._allowed(f.args[0]) and self.base.knows_instruction(f.args[1])
        if f.name == "stay":
            if f.arity == 0:
                return True
            if f.arity == 1:
                return self._allowed(f.args[0])
            return (
                self.stayf
                and f.arity == 2
                and self._allowed(f.args[0])
                and self.base.knows_instruction(f.args[1])
            )
        return f == Op("pop")

    def knows_encoding(self, e: Op) -> bool:
        return e.name == "pair" and e.arity == 2 and self._allowed(e.args[0]) and self.base.knows_encoding(e.args[1])

    def test(self, p: Op, c: PairSeq) -> bool:
        symbol, inner = c.top
        if p.name == "top=":
            return symbol == p.arg_name()
        if p.name == "test":
            return self.base.test(p.args[0], inner)
        return len(c) == 1

    def apply(self, f: Op, c: PairSeq) -> Optional[PairSeq]:
        symbol, inner = c.top
        if f.name == "push":
            moved = self.base.apply(f.args[1], inner)
            if moved is None:
                return None
            return PairSeq(((f.arg_name(0), moved),) + c.cells)
        if f.name == "pop":
            return PairSeq(c.cells[1:]) if len(c) > 1 else None
        if f.arity == 0:
            return c
        if f.arity == 1:
            return PairSeq(((f.arg_name(0), inner),) + c.cells[1:])
        moved = self.base.apply(f.args[1], inner)
        if moved is None:
            return None
        return PairSeq(((f.arg_name(0), moved),) + c.cells[1:])

    def encode(self, e: Op, u) -> Optional[PairSeq]:
        inner = self.base.encode(e.args[1], self.base.coerce_input(e.args[1], u))
        if inner is None:
            return None
        return PairSeq(((e.arg_name(0), inner),))

    def input_kind(self, e: Op) -> InputKind:
        return self.base.input_kind(e.args[1])

    def inputs(self, e: Op, max_size: int) -> Iterator:
        return self.base.inputs(e.args[1], max_size)

    def coerce_input(self, e: Op, u):
        return self.base.coerce_input(e.args[1], u)

    def exclusive(self, p: Op, q: Op) -> bool:
        if p.name == "top=" and q.name == "top=":
            return p.args != q.args
        if p.name == "test" and q.name == "test":
            return self.base.exclusive(p.args[0], q.args[0])
        return False

    def identity(self) -> Optional[Op]:
        return Op("stay")

    @property
    def predicates(self) -> Tuple[str, ...]:
        return ("top=γ", "bottom", "test(p)")

    @property
    def instructions(self) -> Tuple[str, ...]:
        extra = ("stay(γ, f)",) if self.stayf else ()
        return ("push(γ, f)", "pop", "stay(γ)", "stay") + extra

    @property
    def encodings(self) -> Tuple[str, ...]:
        return ("(γ, e)",)


def pushdown_of(s: StorageType, stayf: bool = False) -> PushdownOf:
    return PushdownOf(s, stayf=stayf)


def pure_pushdown_of(s: StorageType, symbol: str = DEFAULT_COUNTER_SYMBOL) -> PushdownOf:
    return PushdownOf(s, symbol=symbol)


def iterate_pd(n: int, base: Optional[StorageType] = None) -> StorageType:
    """Pd^n(S), with Pd^0(S) = S and S = S0 by default."""
    if n < 0:
        raise ValidationError(f"Pushdown iteration depth must be nonnegative, got {n}")
    storage = base if base is not None else TrivialStorage()
    for _ in range(n):
        storage = PushdownOf(storage)
    return storage


# Pd(S0) and Pushdown are identified through these maps; the S0 component is constant.

_S0_CONFIGURATION = Atom("c0")


def pd_to_pushdown(c: PairSeq) -> Str:
    return Str(tuple(symbol for symbol, _ in c.cells))


def pushdown_to_pd(c: Str) -> PairSeq:
    return PairSeq(tuple((symbol, _S0_CONFIGURATION) for symbol in c.symbols))


def pushdown_instruction_to_pd(f: Op) -> Op:
    """Translate a Pushdown instruction into the Pd(S0) instruction with the same effect."""
    if f.name == "push":
        return Op("push", (f.args[0], Op("id")))
    return f


def pushdown_encoding_to_pd(e: Op) -> Op:
    return Op("pair", (e, Op("en")))


def is_pushdown_like(s: StorageType) -> bool:
    return isinstance(s, (PushdownStorage, PushdownOf))


# ============================================================================
# LOOK-AHEAD
# ============================================================================

GrammarRegistry = Union[Mapping[str, Any], Iterable[Tuple[str, Any]]]


@dataclass(frozen=True)
class LookaheadStorage(_Delegating):
    """S_LA restricted to a registry of CF(S) grammars, keyed by canonical text.

    acc(KEY)(c) holds iff the registered grammar derives a terminal string from
    its initial nonterminal at c. Searches cut by ``step_bound`` on a
    non-noetherian base raise LookaheadUnknown.
    """

    base: StorageType
    keys: Tuple[str, ...] = ()
    grammars: Tuple[Any, ...] = field(default=(), compare=False, repr=False)
    step_bound: int = 500
    exclusive_groups: Tuple[FrozenSet[str], ...] = ()
    _cache: SynchronizedCache = field(
        default_factory=SynchronizedCache, compare=False, repr=False, hash=False
    )

    @property
    def noetherian(self) -> bool:
        return self.base.noetherian

    @property
    def expr(self) -> str:
        return f"la({self.base.expr}, {self.step_bound})"

    def grammar(self, key: str):
        try:
            return self.grammars[self.keys.index(key)]
        except ValueError:
            raise ValidationError(f"No look-ahead grammar registered under '{key}'") from None

    def registry(self) -> Tuple[Tuple[str, Any], ...]:
        return tuple(zip(self.keys, self.grammars))

    def _is_acc(self, p: Op) -> bool:
        return p.name == "acc" and p.arity == 1 and p.arg_name() in self.keys

    def knows_predicate(self, p: Op) -> bool:
        return self._is_acc(p) or self.base.knows_predicate(p)

    def test(self, p: Op, c) -> bool:
        if p.name != "acc":
            return self.base.test(p, c)
        key = p.arg_name()
        outcome = self._cache.get_or_compute((key, c), lambda: self._decide(key, c))
        if outcome is None:
            raise LookaheadUnknown(
                f"acc({key}) undecided at configuration {c} within {self.step_bound} steps",
                construction="look-ahead",
            )
        return outcome

    def _decide(self, key: str, c) -> Optional[bool]:
        from engine.acceptance import configuration_accepted

        outcome = configuration_accepted(self.grammar(key), c, self.step_bound)
        logger.debug(f"acc({key}) at {c}: {outcome}")
        return outcome

    def exclusive(self, p: Op, q: Op) -> bool:
        if self._is_acc(p) and self._is_acc(q):
            pair_keys = {p.arg_name(), q.arg_name()}
            return len(pair_keys) == 2 and any(pair_keys <= group for group in self.exclusive_groups)
        if self._is_acc(p) or self._is_acc(q):
            return False
        return self.base.exclusive(p, q)

    @property
    def predicates(self) -> Tuple[str, ...]:
        return self.base.predicates + tuple(f"acc({key})" for key in self.keys)


def with_lookahead(
    s: StorageType,
    registry: GrammarRegistry,
    step_bound: int = 500,
    exclusive_groups: Iterable[Iterable[str]] = (),
) -> LookaheadStorage:
    """Extend s with acc predicates; registry maps keys to CF(s) grammars.

    Grammars given without keys (a plain sequence of grammars) are keyed by
    their canonical printed form, so identical grammars share one predicate.
    """
    items = list(registry.items()) if isinstance(registry, Mapping) else list(registry)
    keys, grammars = [], []
    for item in items:
        if isinstance(item, tuple):
            key, grammar = item
        else:
            from grammar.printer import grammar_key

            key, grammar = grammar_key(item), item
        if key in keys:
            continue
        keys.append(key)
        grammars.append(grammar)
    if isinstance(s, LookaheadStorage):
        # flatten nested look-ahead into one registry
        merged = dict(s.registry())
        for key, grammar in zip(keys, grammars):
            merged.setdefault(key, grammar)
        keys, grammars = list(merged), list(merged.values())
        exclusive_groups = tuple(s.exclusive_groups) + tuple(exclusive_groups)
        s = s.base
    return LookaheadStorage(
        base=s,
        keys=tuple(keys),
        grammars=tuple(grammars),
        step_bound=step_bound,
        exclusive_groups=tuple(frozenset(group) for group in exclusive_groups),
    )


__all__ = [
    "WithIdentity",
    "with_identity",
    "Product",
    "product",
    "PushdownOf",
    "pushdown_of",
    "pure_pushdown_of",
    "iterate_pd",
    "pd_to_pushdown",
    "pushdown_to_pd",
    "pushdown_instruction_to_pd",
    "pushdown_encoding_to_pd",
    "is_pushdown_like",
    "LookaheadStorage",
    "with_lookahead",
]
