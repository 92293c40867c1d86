"""Normal forms for REG, RT and CF_ext grammars, and the top-test normal form of
pushdown grammars (with bottom-marking of pushdown symbols)."""
from __future__ import annotations

from dataclasses import replace
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from config.constants import BOTTOM_SUFFIX
from grammar.desugar import desugar
from grammar.fresh import FreshNames, for_grammar
from grammar.model import Call, Grammar, GrammarClass, RhsItem, Rule, is_tail_call
from models.errors import PreconditionError
from storage.base import StorageType
from storage.builtins import PushdownStorage
from storage.combinators import PushdownOf, WithIdentity, with_identity
from storage.expressions import Pred, atoms, conj, disjoint_cubes, from_cube
from storage.symbols import Op
from utils.logger import get_logger

logger = get_logger(__name__)


def _single(call: RhsItem) -> bool:
    return isinstance(call, Call) and len(call.chain) == 1


# ============================================================================
# NORMAL-FORM PREDICATES
# ============================================================================

def is_reg_normal(g: Grammar) -> bool:
    """Every rule reads at most one terminal: λ, a, aB(f) or B(f)."""
    for rule in g.rules:
        rhs = rule.rhs
        if len(rhs) > 2:
            return False
        if len(rhs) == 2 and not (isinstance(rhs[0], str) and _single(rhs[1])):
            return False
        if len(rhs) == 1 and isinstance(rhs[0], Call) and not _single(rhs[0]):
            return False
    return True


def is_rt_normal(g: Grammar) -> bool:
    """Every rule is B(f) or σ B1(f1) ... Bk(fk) with k the rank of σ."""
    ranks = g.ranks
    for rule in g.rules:
        rhs = rule.rhs
        if not rhs:
            return False
        head = rhs[0]
        if isinstance(head, Call):
            if len(rhs) != 1 or not _single(head):
                return False
            continue
        if len(rhs) != 1 + ranks.get(head, -1) or not all(_single(item) for item in rhs[1:]):
            return False
    return True


def cfext_rule_shape(rule: Rule, storage: StorageType) -> Optional[str]:
    """'w', 'wB(id)' or 'C(f)B(id)' when the rule has a normal-form shape."""
    rhs = rule.rhs
    if all(isinstance(item, str) for item in rhs):
        return "w"
    if not is_tail_call(rhs[-1], storage):
        return None
    body = rhs[:-1]
    if all(isinstance(item, str) for item in body):
        return "wB(id)"
    if len(body) == 1 and _single(body[0]):
        return "C(f)B(id)"
    return None


def is_cfext_normal(g: Grammar) -> bool:
    if g.storage.identity() is None:
        return False
    return all(cfext_rule_shape(rule, g.storage) is not None for rule in g.rules)


def is_normal_form(g: Grammar) -> bool:
    if g.grammar_class == GrammarClass.REG:
        return is_reg_normal(g)
    if g.grammar_class == GrammarClass.RT:
        return is_rt_normal(g)
    if g.grammar_class == GrammarClass.CF_EXT:
        return is_cfext_normal(g)
    return False


def _require_identity(g: Grammar, construction: str) -> Op:
    identity = g.storage.identity()
    if identity is None:
        raise PreconditionError(
            f"storage {g.storage.expr} has no identity instruction",
            grammar=str(g),
            construction=construction,
        )
    return identity


# ============================================================================
# REG AND RT
# ============================================================================

def normalize_reg(g: Grammar) -> Grammar:
    """Split long terminal prefixes a1...an B(f) through fresh states."""
    identity = _require_identity(g, "normalize-reg")
    g = desugar(g)
    names = for_grammar(g)
    added: List[str] = []
    rules: List[Rule] = []
    for rule in g.rules:
        word = [item for item in rule.rhs if isinstance(item, str)]
        tail = [item for item in rule.rhs if isinstance(item, Call)]
        if len(word) <= 1:
            rules.append(rule)
            continue
        current, test = rule.lhs, rule.test
        for symbol in word[:-1]:
            state = names.fresh(rule.lhs)
            added.append(state)
            rules.append(Rule(current, test, (symbol, Call(state, (identity,)))))
            current, test = state, conj()
        rules.append(Rule(current, test, (word[-1],) + tuple(tail)))
    return g.with_rules(rules, nonterminals=g.nonterminals + tuple(added))


def subterm_end(items: Sequence[RhsItem], start: int, ranks: Dict[str, int]) -> int:
    """Index just past the prefix-notation subterm starting at ``start``."""
    head = items[start]
    position = start + 1
    if isinstance(head, Call):
        return position
    for _ in range(ranks[head]):
        position = subterm_end(items, position, ranks)
    return position


def children_of(items: Sequence[RhsItem], ranks: Dict[str, int]) -> List[Tuple[RhsItem, ...]]:
    """The direct subterms of a prefix term whose head is a terminal."""
    children = []
    position = 1
    for _ in range(ranks[items[0]]):
        end = subterm_end(items, position, ranks)
        children.append(tuple(items[position:end]))
        position = end
    return children


def normalize_rt(g: Grammar) -> Grammar:
    """Cut right-hand sides deeper than one level through fresh nonterminals."""
    identity = _require_identity(g, "normalize-rt")
    g = desugar(g)
    ranks = g.ranks
    names = for_grammar(g)
    added: List[str] = []
    rules: List[Rule] = []

    def emit(lhs: str, test, rhs: Tuple[RhsItem, ...]) -> None:
        if isinstance(rhs[0], Call):
            rules.append(Rule(lhs, test, rhs))
            return
        flat: List[RhsItem] = [rhs[0]]
        for child in children_of(rhs, ranks):
            if len(child) == 1 and _single(child[0]):
                flat.append(child[0])
                continue
            state = names.fresh(lhs)
            added.append(state)
            flat.append(Call(state, (identity,)))
            emit(state, conj(), child)
        rules.append(Rule(lhs, test, tuple(flat)))

    for rule in g.rules:
        emit(rule.lhs, rule.test, rule.rhs)
    return g.with_rules(rules, nonterminals=g.nonterminals + tuple(added))


# ============================================================================
# CF_EXT
# ============================================================================

def lift_to_cfext(g: Grammar) -> Grammar:
    """View a CF(S) grammar as a CF_ext(S) grammar over S_id."""
    if g.grammar_class == GrammarClass.CF_EXT:
        return g
    if g.grammar_class == GrammarClass.RT:
        raise PreconditionError("RT grammars are lifted through their yield grammar", grammar=str(g))
    storage = g.storage if isinstance(g.storage, WithIdentity) else with_identity(g.storage)
    return replace(g, storage=storage, grammar_class=GrammarClass.CF_EXT)


def normalize_cfext(g: Grammar) -> Grammar:
    """Bring every rule to w, wB(id) or C(f)B(id) by threading fresh tails."""
    g = desugar(lift_to_cfext(g))
    identity = g.storage.identity()
    names = for_grammar(g)
    added: List[str] = []
    rules: List[Rule] = []
    empty: List[str] = []

    def empty_nonterminal() -> str:
        if not empty:
            state = names.fresh("E")
            empty.append(state)
            added.append(state)
            rules.append(Rule(state))
        return empty[0]

    for rule in g.rules:
        steps = _segments(rule.rhs, g.storage)
        current, test = rule.lhs, rule.test
        for position, step in enumerate(steps):
            last = position == len(steps) - 1
            if last and (is_tail_call(step[-1], g.storage) or all(isinstance(item, str) for item in step)):
                rules.append(Rule(current, test, step))
            elif last:
                rules.append(Rule(current, test, step + (Call(empty_nonterminal(), (identity,)),)))
            else:
                state = names.fresh(rule.lhs)
                added.append(state)
                rules.append(Rule(current, test, step + (Call(state, (identity,)),)))
                current, test = state, conj()
        if not steps:
            rules.append(Rule(rule.lhs, rule.test, ()))
    logger.debug(f"{g}: CF_ext normal form with {len(added)} fresh nonterminals")
    return g.with_rules(rules, nonterminals=g.nonterminals + tuple(added))


def _segments(rhs: Tuple[RhsItem, ...], storage: StorageType) -> List[Tuple[RhsItem, ...]]:
    """Maximal terminal blocks and single calls; a trailing tail joins the step before it."""
    steps: List[Tuple[RhsItem, ...]] = []
    block: List[str] = []
    for item in rhs:
        if isinstance(item, str):
            block.append(item)
            continue
        if block:
            steps.append(tuple(block))
            block = []
        steps.append((item,))
    if block:
        steps.append(tuple(block))
    if len(steps) >= 2 and is_tail_call(steps[-1][0], storage) and len(steps[-1]) == 1:
        previous = steps[-2]
        if all(isinstance(item, str) for item in previous) or len(previous) == 1:
            steps[-2:] = [previous + steps[-1]]
    return steps


# ============================================================================
# TOP-TEST NORMAL FORM FOR PUSHDOWN STORAGE
# ============================================================================

def marked(symbol: str) -> str:
    return symbol + BOTTOM_SUFFIX


def is_marked(symbol: str) -> bool:
    return symbol.endswith(BOTTOM_SUFFIX)


def _pushdown_core(storage: StorageType) -> StorageType:
    if isinstance(storage, WithIdentity):
        return _pushdown_core(storage.base)
    return storage


def pushdown_alphabet(g: Grammar) -> List[str]:
    """Γ_G: the pushdown symbols occurring in tests, instructions and the encoding."""
    found: List[str] = []

    def add(symbol: str) -> None:
        if symbol not in found:
            found.append(symbol)

    core = _pushdown_core(g.storage)
    if isinstance(core, PushdownOf):
        add(g.encoding.arg_name(0))
    elif g.encoding.name == "unary":
        add(g.encoding.arg_name(1))
        add(g.encoding.arg_name(0))
    else:
        add(g.encoding.name)
    for rule in g.rules:
        for op in atoms(rule.test):
            if op.name == "top=":
                add(op.arg_name())
        for f in rule.instructions:
            if f.name in ("push", "stay") and f.args:
                add(f.arg_name(0))
    return found


def _mark_instruction(f: Op, on_bottom: bool) -> Optional[Op]:
    """The instruction acting on a bottom-marked (or unmarked) top cell; None if undefined."""
    if not on_bottom:
        return f
    if f.name == "pop":
        return None
    if f.name == "stay" and f.args:
        return Op("stay", (Op(marked(f.arg_name(0))),) + f.args[1:])
    return f


def mark_encoding(e: Op, pd: bool) -> Op:
    if pd:
        return Op("pair", (Op(marked(e.arg_name(0))),) + e.args[1:])
    if e.name == "unary":
        return Op("unary", (e.args[0], Op(marked(e.arg_name(1)))))
    return Op(marked(e.name))


def top_cases(rule: Rule, gammas: Sequence[str], storage: StorageType) -> Iterator[Tuple[str, bool, Tuple]]:
    """(γ, on_bottom, other literals) for each way the rule's test can hold.

    Cubes with two positive tops are dropped by exclusivity; a cube without a
    positive top ranges over Γ_G minus its negated tops.
    """
    for cube in disjoint_cubes(rule.test, storage.exclusive):
        positive = [op.arg_name() for op, value in cube if op.name == "top=" and value]
        negative = {op.arg_name() for op, value in cube if op.name == "top=" and not value}
        bottom = [value for op, value in cube if op.name == "bottom"]
        rest = tuple((op, value) for op, value in cube if op.name not in ("top=", "bottom"))
        if len(positive) > 1:
            continue
        candidates = positive if positive else [gamma for gamma in gammas if gamma not in negative]
        variants = [bottom[0]] if bottom else [False, True]
        for gamma in candidates:
            for on_bottom in variants:
                yield gamma, on_bottom, rest


def _bottom_marked_rules(rule: Rule, gammas: Sequence[str], storage: StorageType) -> Iterator[Rule]:
    for gamma, on_bottom, rest in top_cases(rule, gammas, storage):
        rhs: List[RhsItem] = []
        for item in rule.rhs:
            if isinstance(item, Call):
                f = _mark_instruction(item.chain[0], on_bottom)
                if f is None:
                    break
                rhs.append(Call(item.nonterminal, (f,)))
            else:
                rhs.append(item)
        else:
            symbol = marked(gamma) if on_bottom else gamma
            yield Rule(rule.lhs, conj(Pred(Op("top=", (Op(symbol),))), from_cube(rest)), tuple(rhs))


def broaden_pushdown(storage: StorageType) -> StorageType:
    """Drop a one-symbol restriction so that bottom-marked symbols are admitted."""
    if isinstance(storage, WithIdentity):
        return WithIdentity(broaden_pushdown(storage.base), storage.identity_name)
    if isinstance(storage, PushdownStorage):
        return PushdownStorage()
    if isinstance(storage, PushdownOf) and storage.symbol is not None:
        return PushdownOf(storage.base, stayf=storage.stayf)
    return storage


def cfp_test_normal_form(g: Grammar) -> Grammar:
    """Every test becomes top=γ (and a test(b) part over Pd(S)); bottom is replaced by
    bottom-marked pushdown symbols γ~b."""
    core = _pushdown_core(g.storage)
    if not isinstance(core, (PushdownStorage, PushdownOf)):
        raise PreconditionError(
            f"top-test normal form needs pushdown storage, not {g.storage.expr}",
            grammar=str(g),
            construction="cfp-test-normal-form",
        )
    g = desugar(g)
    gammas = pushdown_alphabet(g)
    rules: List[Rule] = []
    for rule in g.rules:
        rules.extend(_bottom_marked_rules(rule, gammas, g.storage))
    logger.debug(f"{g}: {len(g.rules)} rules became {len(rules)} top-tested rules over {gammas}")
    return replace(
        g,
        storage=broaden_pushdown(g.storage),
        encoding=mark_encoding(g.encoding, isinstance(core, PushdownOf)),
        rules=tuple(rules),
    )


__all__ = [
    "is_reg_normal",
    "is_rt_normal",
    "is_cfext_normal",
    "is_normal_form",
    "normalize_reg",
    "normalize_rt",
    "lift_to_cfext",
    "normalize_cfext",
    "cfp_test_normal_form",
    "pushdown_alphabet",
    "top_cases",
    "marked",
    "is_marked",
    "mark_encoding",
    "broaden_pushdown",
    "subterm_end",
    "children_of",
    "FreshNames",
]
