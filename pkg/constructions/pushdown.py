"""Grammars and pushdown automata: CF_ext(S) to REG(Pd(S)), the triple construction
back, and the collapse of identity tails for functional transducers."""
from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Dict, Iterable, List, Optional, Sequence, Set, Tuple

from config.constants import AUTOMATON_STATE, DRAIN_STATE, END_MARKER
from grammar.desugar import desugar
from grammar.fresh import for_grammar
from grammar.model import Call, Grammar, GrammarClass, Rule, is_tail_call, used_nonterminals
from grammar.normal_forms import cfext_rule_shape, cfp_test_normal_form, is_cfext_normal, lift_to_cfext, pushdown_alphabet
from models.errors import PreconditionError
from storage.base import StorageType
from storage.combinators import PushdownOf, WithIdentity, pushdown_of, with_identity
from storage.expressions import FALSE, And, Pred, Test, conj, map_predicates, neg
from storage.symbols import Op, pair
from utils.logger import get_logger

logger = get_logger(__name__)

_BOTTOM = Pred(Op("bottom"))


def derived_name(g: Grammar, tag: str) -> str:
    return f"{g.name or 'grammar'}-{tag}"


def lift_test(b: Test) -> Test:
    """b over S becomes test(b) over Pd(S)."""
    return map_predicates(b, lambda p: Pred(Op("test", (p,))))


def _top(symbol: str) -> Test:
    return Pred(Op("top=", (Op(symbol),)))


# ============================================================================
# CF_EXT(S) TO REG(Pd(S))
# ============================================================================

def to_pushdown_automaton(g: Grammar) -> Grammar:
    """The one-state automaton simulating leftmost derivations of a normal-form CF_ext grammar.

    Nonterminals become pushdown symbols; each cell keeps the configuration of
    its nonterminal.
    """
    if g.grammar_class != GrammarClass.CF_EXT or not is_cfext_normal(g):
        raise PreconditionError(
            "needs a CF_ext grammar in normal form (apply normalize_cfext first)",
            grammar=str(g),
            construction="to-pda",
        )
    state = AUTOMATON_STATE
    rules: List[Rule] = []
    for rule in g.rules:
        guard = conj(lift_test(rule.test), _top(rule.lhs))
        shape = cfext_rule_shape(rule, g.storage)
        if shape == "wB(id)":
            tail = rule.rhs[-1]
            rules.append(Rule(state, guard, rule.rhs[:-1] + (Call(state, (Op("stay", (Op(tail.nonterminal),)),)),)))
        elif shape == "C(f)B(id)":
            first, tail = rule.rhs
            chain = (Op("stay", (Op(tail.nonterminal),)), Op("push", (Op(first.nonterminal), first.chain[0])))
            rules.append(Rule(state, guard, (Call(state, chain),)))
        else:
            rules.append(Rule(state, conj(guard, neg(_BOTTOM)), rule.rhs + (Call(state, (Op("pop"),)),)))
            rules.append(Rule(state, conj(guard, _BOTTOM), rule.rhs))
    logger.debug(f"{g}: {len(g.rules)} rules became {len(rules)} automaton rules")
    return Grammar(
        storage=pushdown_of(g.storage),
        nonterminals=(state,),
        terminals=g.terminals,
        initial=state,
        encoding=pair(Op(g.initial), g.encoding),
        rules=tuple(rules),
        grammar_class=GrammarClass.REG,
        name=derived_name(g, "pda"),
    )


# ============================================================================
# REG(Pd(S)) TO CF_EXT(S): THE TRIPLE CONSTRUCTION
# ============================================================================

def triple(source: str, symbol: str, target: str) -> str:
    return f"<{source},{symbol},{target}>"


@dataclass(frozen=True)
class TripleRule:
    """A rule of the triple grammar; ``pushed`` is (B, δ, E, f) for rules from push rules."""

    rule: Rule
    pushed: Optional[Tuple[str, str, str, Op]] = None


def _require_pushdown(g: Grammar, construction: str) -> PushdownOf:
    if g.grammar_class != GrammarClass.REG or not isinstance(g.storage, PushdownOf):
        raise PreconditionError(
            f"needs a REG grammar over a pushdown of some storage, not {g.grammar_class.value} over {g.storage.expr}",
            grammar=str(g),
            construction=construction,
        )
    return g.storage


def drain_before_final(g: Grammar) -> Grammar:
    """Final rules hand over to a state that pops down to the last cell before halting."""
    finals = [rule for rule in g.rules if not rule.calls]
    if not finals:
        return g
    drain = for_grammar(g).fresh(DRAIN_STATE)
    rules = [rule if rule.calls else Rule(rule.lhs, rule.test, rule.rhs + (Call(drain, (Op("stay"),)),)) for rule in g.rules]
    rules.append(Rule(drain, neg(_BOTTOM), (Call(drain, (Op("pop"),)),)))
    rules.append(Rule(drain, _BOTTOM, ()))
    return g.with_rules(rules, nonterminals=g.nonterminals + (drain,))


def prepare_automaton(g: Grammar) -> Grammar:
    """Single instructions, final rules on one cell, no bottom, tests top=γ and test(b)."""
    _require_pushdown(g, "to-grammar")
    return cfp_test_normal_form(drain_before_final(desugar(g)))


def _split_guard(rule: Rule, g: Grammar) -> Tuple[str, Test]:
    parts = rule.test.args if isinstance(rule.test, And) else (rule.test,)
    tops = [part.op.arg_name() for part in parts if isinstance(part, Pred) and part.op.name == "top="]
    rest = [part for part in parts if not (isinstance(part, Pred) and part.op.name == "top=")]
    if len(tops) != 1:
        raise PreconditionError("rule test has no single top=γ", grammar=str(g), rule_index=g.rules.index(rule), construction="to-grammar")

    def unwrap(op: Op) -> Test:
        if op.name != "test":
            raise PreconditionError(f"unexpected predicate '{op}' after test normalization", grammar=str(g), construction="to-grammar")
        return Pred(op.args[0])

    return tops[0], map_predicates(conj(*rest), unwrap)


def triple_rules(rule: Rule, symbol: str, b: Test, nonterminals: Sequence[str], identity: Op) -> List[TripleRule]:
    """Rules of the triple grammar for one top-tested automaton rule."""
    ends = tuple(nonterminals) + (END_MARKER,)
    word = rule.terminals
    if not rule.calls:
        return [TripleRule(Rule(triple(rule.lhs, symbol, END_MARKER), b, word))]
    call = rule.calls[0]
    f = call.chain[0]
    target = call.nonterminal
    if f.name == "pop":
        return [TripleRule(Rule(triple(rule.lhs, symbol, target), b, word))]
    if f.name == "push":
        delta, inner = f.arg_name(0), f.args[1]
        return [
            TripleRule(
                Rule(
                    triple(rule.lhs, symbol, end),
                    b,
                    word + (Call(triple(target, delta, middle), (inner,)), Call(triple(middle, symbol, end), (identity,))),
                ),
                pushed=(target, delta, middle, inner),
            )
            for end in ends
            for middle in nonterminals
        ]
    if f.arity == 0:
        moved, step = symbol, identity
    elif f.arity == 1:
        moved, step = f.arg_name(0), identity
    else:
        moved, step = f.arg_name(0), f.args[1]
    return [TripleRule(Rule(triple(rule.lhs, symbol, end), b, word + (Call(triple(target, moved, end), (step,)),))) for end in ends]


def _identity_storage(base: StorageType) -> WithIdentity:
    return base if isinstance(base, WithIdentity) else with_identity(base)


@dataclass
class TripleGrammar:
    grammar: Grammar
    rules: List[TripleRule]


def triple_construction(g: Grammar, prune: bool = True) -> TripleGrammar:
    prepared = prepare_automaton(g)
    storage = _identity_storage(prepared.storage.base)
    identity = storage.identity()
    gammas = pushdown_alphabet(prepared)
    generated: List[TripleRule] = []
    for rule in prepared.rules:
        symbol, b = _split_guard(rule, prepared)
        generated.extend(triple_rules(rule, symbol, b, prepared.nonterminals, identity))
    bottom_symbol, inner_encoding = prepared.encoding.arg_name(0), prepared.encoding.args[1]
    initial = triple(prepared.initial, bottom_symbol, END_MARKER)
    if prune:
        generated = prune_rules(generated, initial)
        nonterminals = tuple(dict.fromkeys([initial] + used_nonterminals(item.rule for item in generated)))
    else:
        ends = prepared.nonterminals + (END_MARKER,)
        nonterminals = tuple(triple(a, gamma, end) for a in prepared.nonterminals for gamma in gammas for end in ends)
    logger.debug(f"{g}: triple construction kept {len(generated)} rules over {len(nonterminals)} triples")
    result = Grammar(
        storage=storage,
        nonterminals=nonterminals,
        terminals=g.terminals,
        initial=initial,
        encoding=inner_encoding,
        rules=tuple(item.rule for item in generated),
        grammar_class=GrammarClass.CF_EXT,
        name=derived_name(g, "cf"),
    )
    return TripleGrammar(result, generated)


def productive_nonterminals(rules: Iterable[Rule]) -> Set[str]:
    """Nonterminals deriving some terminal string when storage is ignored."""
    rules = list(rules)
    productive: Set[str] = set()
    changed = True
    while changed:
        changed = False
        for rule in rules:
            if rule.lhs not in productive and all(call.nonterminal in productive for call in rule.calls):
                productive.add(rule.lhs)
                changed = True
    return productive


def prune_rules(rules: Sequence[TripleRule], initial: str) -> List[TripleRule]:
    """Drop rules with unproductive calls and rules unreachable from ``initial``."""
    productive = productive_nonterminals(item.rule for item in rules)
    useful = [item for item in rules if all(call.nonterminal in productive for call in item.rule.calls)]
    reachable = {initial}
    stack = [initial]
    by_lhs: Dict[str, List[TripleRule]] = {}
    for item in useful:
        by_lhs.setdefault(item.rule.lhs, []).append(item)
    while stack:
        for item in by_lhs.get(stack.pop(), []):
            for call in item.rule.calls:
                if call.nonterminal not in reachable:
                    reachable.add(call.nonterminal)
                    stack.append(call.nonterminal)
    return [item for item in useful if item.rule.lhs in reachable]


def to_grammar(g: Grammar, prune: bool = True) -> Grammar:
    """CF_ext(S) grammar with triples <A,γ,B> equivalent to a REG(Pd(S)) grammar.

    <A,γ,B>(c) derives w when the automaton, in state A with (γ, c) on top,
    reads w and pops that cell into state B; B = ω means it halts instead.
    """
    return triple_construction(g, prune=prune).grammar


# ============================================================================
# COLLAPSING IDENTITY TAILS
# ============================================================================

def collapse_ext(g: Grammar) -> Grammar:
    """A CF grammar without identity tails, for CF_ext grammars whose T(G) is a partial function.

    Every chain A1 → ξ1 A2(id), ..., An → ξn of distinct nonterminals becomes
    A1 → if b1 and ... and bn then ξ1...ξn. Functionality is the caller's
    assertion; ``engine.search.is_functional`` checks it within bounds.
    """
    g = desugar(lift_to_cfext(g), expand_chains=False)
    storage = g.storage
    tails: Dict[str, List[Tuple[Test, tuple, Optional[str]]]] = {}
    for rule in g.rules:
        if rule.rhs and is_tail_call(rule.rhs[-1], storage):
            tails.setdefault(rule.lhs, []).append((rule.test, rule.rhs[:-1], rule.rhs[-1].nonterminal))
        else:
            tails.setdefault(rule.lhs, []).append((rule.test, rule.rhs, None))

    rules: List[Rule] = []

    def extend(start: str, current: str, visited: Tuple[str, ...], test: Test, body: tuple) -> None:
        for step_test, step_body, following in tails.get(current, []):
            joined = conj(test, step_test)
            if following is None:
                rules.append(Rule(start, joined, body + step_body))
            elif following not in visited:
                extend(start, following, visited + (following,), joined, body + step_body)

    for nonterminal in g.nonterminals:
        extend(nonterminal, nonterminal, (nonterminal,), conj(), ())
    rules = [rule for rule in rules if rule.test != FALSE]
    identity = storage.identity()
    uses_identity = any(f == identity for rule in rules for f in rule.instructions)
    target = storage if uses_identity or not isinstance(storage, WithIdentity) else storage.base
    logger.debug(f"{g}: collapsed into {len(rules)} rules")
    return replace(
        g,
        storage=target,
        rules=tuple(dict.fromkeys(rules)),
        grammar_class=GrammarClass.CF,
        name=derived_name(g, "cf"),
    )


__all__ = [
    "TripleGrammar",
    "TripleRule",
    "collapse_ext",
    "derived_name",
    "drain_before_final",
    "lift_test",
    "prepare_automaton",
    "productive_nonterminals",
    "prune_rules",
    "to_grammar",
    "to_pushdown_automaton",
    "triple",
    "triple_construction",
    "triple_rules",
]
