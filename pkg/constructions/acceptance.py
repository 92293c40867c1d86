"""Empty-store versus final-state acceptance, and the leaf marking of trees.

REG r-acceptors accept by empty store (L(G)) or by final state (L(G, N_H)).
RT r-acceptors "accept by final state" through marked trees: every leaf σ is
replaced by σ(#), so the automaton can still test the storage after a leaf.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, FrozenSet, Iterable, List, Mapping, Optional

from config.constants import LOOKAHEAD_START, MARK
from config.settings import settings
from constructions.lookahead import acc, auxiliary_grammar
from constructions.pushdown import derived_name
from engine.search import generate, is_prefix_free
from grammar.desugar import desugar
from grammar.determinism import is_racceptor_deterministic
from grammar.fresh import for_grammar
from grammar.model import Call, Grammar, GrammarClass, Rule, terminal_table
from grammar.normal_forms import is_normal_form, normalize_reg, normalize_rt
from grammar.printer import grammar_key
from models.errors import PreconditionError
from models.schemas import Bounds, LanguageSample
from models.tree import Tree
from storage.combinators import with_lookahead
from storage.expressions import conj
from utils.config_loader import default_bounds
from utils.logger import get_logger

logger = get_logger(__name__)


class RegConversion(str, Enum):
    DE_TO_DF = "de-to-df"
    DF_TO_REG = "df-to-reg"
    DF_PREFIX_FREE_TO_DE = "df-prefix-free-to-de"


class RtConversion(str, Enum):
    DE_TO_DF = "de-to-df"
    DF_TO_RT = "df-to-rt"
    DF_TO_DE_LA = "df-to-de-la"


@dataclass(frozen=True)
class AcceptanceConversion:
    """A converted grammar; ``finals`` is empty when it accepts by empty store."""

    grammar: Grammar
    finals: FrozenSet[str] = frozenset()
    notes: List[str] = field(default_factory=list, compare=False)


def _require_reg_racceptor(g: Grammar, construction: str) -> Grammar:
    if g.grammar_class != GrammarClass.REG:
        raise PreconditionError("needs a REG r-acceptor", grammar=str(g), construction=construction)
    normal = g if is_normal_form(g) else normalize_reg(g)
    if not is_racceptor_deterministic(normal):
        raise PreconditionError("grammar is not r-acceptor deterministic", grammar=str(g), construction=construction)
    return normal


def _require_finals(g: Grammar, finals: Optional[Iterable[str]], construction: str) -> FrozenSet[str]:
    if finals is None:
        raise PreconditionError("final states are required", grammar=str(g), construction=construction)
    finals = frozenset(finals)
    unknown = finals - set(g.nonterminals)
    if unknown:
        raise PreconditionError(
            f"final states {sorted(unknown)} are not nonterminals",
            grammar=str(g),
            construction=construction,
        )
    return finals


# ============================================================================
# REG R-ACCEPTORS
# ============================================================================

def empty_store_to_final_state(g: Grammar) -> AcceptanceConversion:
    """Every terminal-only rule A → w becomes A → w Q(id) for a new final state Q."""
    g = _require_reg_racceptor(g, "conv-reg")
    identity = g.storage.identity()
    final = for_grammar(g).fresh("Q")
    rules = [
        rule if rule.calls else Rule(rule.lhs, rule.test, rule.rhs + (Call(final, (identity,)),))
        for rule in g.rules
    ]
    converted = g.with_rules(rules, nonterminals=g.nonterminals + (final,), name=derived_name(g, "df"))
    return AcceptanceConversion(converted, frozenset({final}))


def final_state_to_reg(g: Grammar, finals: Iterable[str]) -> Grammar:
    """A REG grammar whose empty-store language is L(G, N_H).

    Terminal-only rules are dropped and A → λ is added for every final A, so a
    derivation can only end in a final state.
    """
    finals = _require_finals(g, finals, "conv-reg")
    if g.grammar_class != GrammarClass.REG:
        raise PreconditionError("needs a REG r-acceptor", grammar=str(g), construction="conv-reg")
    rules = [rule for rule in desugar(g).rules if rule.calls]
    rules.extend(Rule(nonterminal) for nonterminal in g.nonterminals if nonterminal in finals)
    return g.with_rules(rules, name=derived_name(g, "reg"))


def final_state_sample(g: Grammar, finals: Iterable[str], bounds: Bounds) -> LanguageSample:
    """Bounded sample of L(G, N_H)."""
    return generate(final_state_to_reg(g, finals), bounds)


def prefix_free_final_state_to_empty_store(
    g: Grammar,
    finals: Iterable[str],
    bounds: Optional[Bounds] = None,
) -> AcceptanceConversion:
    """For prefix-free L(G, N_H): every final A keeps the single rule A → λ.

    Prefix-freeness is checked on the bounded sample and is certified only up
    to the length the sample is complete for.
    """
    finals = _require_finals(g, finals, "conv-reg")
    g = _require_reg_racceptor(g, "conv-reg")
    bounds = bounds or default_bounds()
    sample = final_state_sample(g, finals, bounds)
    report = is_prefix_free(sample)
    if not report.prefix_free:
        raise PreconditionError(
            f"L(G, N_H) is not prefix-free: {report.witness[0]} is a prefix of {report.witness[1]}",
            grammar=str(g),
            construction="conv-reg",
        )
    rules = [rule for rule in g.rules if rule.lhs not in finals]
    rules.extend(Rule(nonterminal) for nonterminal in g.nonterminals if nonterminal in finals)
    converted = g.with_rules(rules, name=derived_name(g, "de"))
    note = f"prefix-freeness certified up to length {report.checked_up_to}"
    logger.debug(f"{g}: {note}")
    return AcceptanceConversion(converted, notes=[note])


def convert_acceptance_reg(
    g: Grammar,
    mode: RegConversion,
    finals: Optional[Iterable[str]] = None,
    bounds: Optional[Bounds] = None,
) -> AcceptanceConversion:
    mode = RegConversion(mode)
    if mode == RegConversion.DE_TO_DF:
        return empty_store_to_final_state(g)
    if mode == RegConversion.DF_TO_REG:
        return AcceptanceConversion(final_state_to_reg(g, finals))
    return prefix_free_final_state_to_empty_store(g, _require_finals(g, finals, "conv-reg"), bounds)


# ============================================================================
# MARK
# ============================================================================

def marked_alphabet(ranks: Mapping[str, int]) -> Dict[str, int]:
    """Δ#: leaves become unary and # is the only leaf."""
    if MARK in ranks:
        raise PreconditionError(f"alphabet already contains the marker '{MARK}'", construction="mark")
    marked = {symbol: (1 if rank == 0 else rank) for symbol, rank in ranks.items()}
    marked[MARK] = 0
    return marked


def mark_tree(t: Tree) -> Tree:
    if not t.children:
        return Tree(t.label, (Tree(MARK),))
    return Tree(t.label, tuple(mark_tree(child) for child in t.children))


def unmark_tree(t: Tree, leaves: Optional[Iterable[str]] = None) -> Tree:
    """Inverse of mark_tree; trees outside its image raise PreconditionError.

    With ``leaves`` given, only those symbols may carry the marker.
    """
    allowed = None if leaves is None else frozenset(leaves)

    def restore(node: Tree) -> Tree:
        if node.label == MARK or not node.children:
            raise PreconditionError(f"'{t}' is not a marked tree", construction="mark")
        if node.rank == 1 and node.children[0].label == MARK:
            if node.children[0].children or (allowed is not None and node.label not in allowed):
                raise PreconditionError(f"'{t}' is not a marked tree", construction="mark")
            return Tree(node.label)
        return Tree(node.label, tuple(restore(child) for child in node.children))

    return restore(t)


def mark_grammar(g: Grammar) -> Grammar:
    """An RT grammar for mark(L(G)): every leaf σ in a right-hand side becomes σ(#)."""
    if g.grammar_class != GrammarClass.RT:
        raise PreconditionError("needs an RT grammar", grammar=str(g), construction="mark")
    ranks = g.ranks
    marked = marked_alphabet(ranks)
    rules = []
    for rule in g.rules:
        rhs = []
        for item in rule.rhs:
            rhs.append(item)
            if isinstance(item, str) and ranks[item] == 0:
                rhs.append(MARK)
        rules.append(Rule(rule.lhs, rule.test, tuple(rhs)))
    return g.with_rules(rules, terminals=terminal_table(list(marked), marked), name=derived_name(g, "marked"))


def mark_language(sample: LanguageSample) -> LanguageSample:
    """Marked trees are one node per leaf larger; completeness is kept as a size."""
    return LanguageSample(
        items=frozenset(mark_tree(t) for t in sample.items),
        bounds=sample.bounds,
        complete_up_to=sample.complete_up_to,
        input_bound=sample.input_bound,
        measure=sample.measure,
    )


def unmark_language(sample: LanguageSample, leaves: Optional[Iterable[str]] = None) -> LanguageSample:
    return LanguageSample(
        items=frozenset(unmark_tree(t, leaves) for t in sample.items),
        bounds=sample.bounds,
        complete_up_to=sample.complete_up_to,
        input_bound=sample.input_bound,
        measure=sample.measure,
    )


# ============================================================================
# RT R-ACCEPTORS
# ============================================================================

def _require_rt_racceptor(g: Grammar, construction: str) -> Grammar:
    if g.grammar_class != GrammarClass.RT:
        raise PreconditionError("needs an RT r-acceptor", grammar=str(g), construction=construction)
    normal = g if is_normal_form(g) else normalize_rt(g)
    if not is_racceptor_deterministic(normal):
        raise PreconditionError("grammar is not r-acceptor deterministic", grammar=str(g), construction=construction)
    return normal


def _require_leaves(g: Grammar, leaves: Optional[Iterable[str]], construction: str) -> List[str]:
    """Δ0 of the unmarked alphabet; marked grammars cannot tell Δ0 from Δ1."""
    if leaves is None:
        raise PreconditionError("the leaf symbols Δ0 must be given", grammar=str(g), construction=construction)
    leaves = list(dict.fromkeys(leaves))
    ranks = g.ranks
    wrong = [symbol for symbol in leaves if ranks.get(symbol) != 1]
    if wrong:
        raise PreconditionError(
            f"{wrong} are not unary symbols of the marked alphabet",
            grammar=str(g),
            construction=construction,
        )
    if ranks.get(MARK) != 0:
        raise PreconditionError(f"alphabet has no marker '{MARK}' of rank 0", grammar=str(g), construction=construction)
    return leaves


def _unmarked_terminals(g: Grammar, leaves: List[str]):
    ranks = {symbol: (0 if symbol in leaves else rank) for symbol, rank in g.ranks.items() if symbol != MARK}
    return terminal_table(list(ranks), ranks)


def rt_empty_store_to_marked(g: Grammar) -> Grammar:
    """An acceptor of mark(L(G)): A → σ (σ ∈ Δ0) becomes A → σ Q(id), plus Q → #."""
    g = _require_rt_racceptor(g, "conv-rt")
    identity = g.storage.identity()
    ranks = marked_alphabet(g.ranks)
    final = for_grammar(g).fresh("Q")
    rules: List[Rule] = []
    for rule in g.rules:
        head = rule.rhs[0]
        if isinstance(head, str) and g.ranks[head] == 0:
            rules.append(Rule(rule.lhs, rule.test, (head, Call(final, (identity,)))))
        else:
            rules.append(rule)
    rules.append(Rule(final, rhs=(MARK,)))
    return g.with_rules(
        rules,
        nonterminals=g.nonterminals + (final,),
        terminals=terminal_table(list(ranks), ranks),
        name=derived_name(g, "df"),
    )


def _leaf_states(g: Grammar, leaves: List[str]) -> Dict[tuple, str]:
    """B_σ for every nonterminal B and leaf σ, named B_σ unless that is taken."""
    names = for_grammar(g)
    states: Dict[tuple, str] = {}
    for nonterminal in g.nonterminals:
        for symbol in leaves:
            candidate = f"{nonterminal}_{symbol}"
            if candidate in names:
                candidate = names.fresh(candidate)
            else:
                names.reserve(candidate)
            states[(nonterminal, symbol)] = candidate
    return states


def marked_to_rt(g: Grammar, leaves: Iterable[str]) -> Grammar:
    """An RT grammar for L from an acceptor of mark(L), remembering the leaf in B_σ."""
    g = desugar(g if is_normal_form(g) else normalize_rt(g))
    leaves = _require_leaves(g, leaves, "conv-rt")
    states = _leaf_states(g, leaves)
    rules: List[Rule] = []
    for rule in g.rules:
        head = rule.rhs[0]
        if head == MARK:
            rules.extend(Rule(states[(rule.lhs, symbol)], rule.test, (symbol,)) for symbol in leaves)
        elif isinstance(head, Call):
            rules.append(rule)
            rules.extend(
                Rule(states[(rule.lhs, symbol)], rule.test, (Call(states[(head.nonterminal, symbol)], head.chain),))
                for symbol in leaves
            )
        elif head in leaves:
            call = rule.rhs[1]
            rules.append(Rule(rule.lhs, rule.test, (Call(states[(call.nonterminal, head)], call.chain),)))
        else:
            rules.append(rule)
    added = tuple(states.values())
    return g.with_rules(
        rules,
        nonterminals=g.nonterminals + added,
        terminals=_unmarked_terminals(g, leaves),
        name=derived_name(g, "rt"),
    )


def marked_to_lookahead(g: Grammar, leaves: Iterable[str], step_bound: Optional[int] = None) -> Grammar:
    """A deterministic RT(S_LA) acceptor of L from a deterministic acceptor of mark(L).

    Rules with # are dropped; A → σ B(f) with σ ∈ Δ0 becomes
    A → if b and acc(G(B, f)) then σ.
    """
    g = _require_rt_racceptor(g, "conv-rt")
    leaves = _require_leaves(g, leaves, "conv-rt")
    step_bound = step_bound or settings.LOOKAHEAD_STEP_BOUND
    start = for_grammar(g).fresh(LOOKAHEAD_START)
    registry: Dict[str, Grammar] = {}
    rules: List[Rule] = []
    for rule in g.rules:
        if MARK in rule.rhs:
            continue
        head = rule.rhs[0]
        if head not in leaves:
            rules.append(rule)
            continue
        entry = Rule(start, rhs=(rule.rhs[1],))
        auxiliary = auxiliary_grammar(g, start, entry, g.rules)
        key = grammar_key(auxiliary)
        registry.setdefault(key, auxiliary)
        rules.append(Rule(rule.lhs, conj(rule.test, acc(key)), (head,)))
    logger.debug(f"{g}: {len(registry)} look-ahead grammars for the leaf rules")
    return g.with_rules(
        rules,
        storage=with_lookahead(g.storage, list(registry.items()), step_bound=step_bound),
        terminals=_unmarked_terminals(g, leaves),
        name=derived_name(g, "de"),
    )


def convert_acceptance_rt(
    g: Grammar,
    mode: RtConversion,
    leaves: Optional[Iterable[str]] = None,
    step_bound: Optional[int] = None,
) -> Grammar:
    mode = RtConversion(mode)
    if mode == RtConversion.DE_TO_DF:
        return rt_empty_store_to_marked(g)
    if mode == RtConversion.DF_TO_RT:
        return marked_to_rt(g, leaves)
    return marked_to_lookahead(g, leaves, step_bound)


__all__ = [
    "AcceptanceConversion",
    "RegConversion",
    "RtConversion",
    "convert_acceptance_reg",
    "convert_acceptance_rt",
    "empty_store_to_final_state",
    "final_state_sample",
    "final_state_to_reg",
    "mark_grammar",
    "mark_language",
    "mark_tree",
    "marked_alphabet",
    "marked_to_lookahead",
    "marked_to_rt",
    "prefix_free_final_state_to_empty_store",
    "rt_empty_store_to_marked",
    "unmark_language",
    "unmark_tree",
]
