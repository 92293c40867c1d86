"""Tree constructions: derivation trees and yields of CF(S) grammars, and the
passage between RT(S) r-acceptors and REG(S) r-acceptors of their paths."""
from __future__ import annotations

from itertools import product as choices
from typing import Dict, Iterable, List, Mapping, Tuple

from config.constants import EPSILON, MARK
from constructions.acceptance import marked_alphabet
from constructions.pushdown import derived_name
from delta.paths import PathAlphabet, path_symbol
from grammar.desugar import desugar
from grammar.determinism import is_racceptor_deterministic
from grammar.fresh import FreshNames, for_grammar
from grammar.model import Call, Grammar, GrammarClass, RhsItem, Rule, terminal_table
from grammar.normal_forms import is_normal_form, normalize_reg, normalize_rt
from models.errors import PreconditionError, ValidationError
from storage.combinators import WithIdentity, with_identity
from storage.expressions import FALSE, conj, satisfiable
from utils.logger import get_logger

logger = get_logger(__name__)


def _claim(names: FreshNames, candidate: str) -> str:
    """``candidate`` itself when unused, else a fresh variant of it."""
    if candidate in names:
        return names.fresh(candidate)
    names.reserve(candidate)
    return candidate


# ============================================================================
# DERIVATION TREES AND YIELDS
# ============================================================================

def derivation_tree_acceptor(g: Grammar) -> Grammar:
    """A deterministic RT(S_id) r-acceptor of the derivation trees of G.

    Rule r = A → if b then ξ becomes A → if b then r̂ ξ', where r̂ has rank |ξ|
    and every terminal σ of ξ is replaced by σ̂(id) with σ̂ → σ. A λ-rule gets a
    unary r̂ over the ε leaf.
    """
    if g.grammar_class not in (GrammarClass.CF, GrammarClass.REG):
        raise PreconditionError("needs a CF grammar", grammar=str(g), construction="deriv-trees")
    g = desugar(g, expand_chains=False)
    storage = g.storage if isinstance(g.storage, WithIdentity) else with_identity(g.storage)
    identity = storage.identity()
    names = for_grammar(g)
    leaf_states: Dict[str, str] = {}

    def leaf_state(symbol: str) -> str:
        if symbol not in leaf_states:
            leaf_states[symbol] = _claim(names, f"L_{symbol}")
        return leaf_states[symbol]

    ranks: Dict[str, int] = {}
    rules: List[Rule] = []
    for index, rule in enumerate(g.rules, start=1):
        label = _claim(names, f"r{index}")
        body = rule.rhs or (EPSILON,)
        ranks[label] = len(body)
        rhs: List[RhsItem] = [label]
        for item in body:
            rhs.append(Call(leaf_state(item), (identity,)) if isinstance(item, str) else item)
        rules.append(Rule(rule.lhs, rule.test, tuple(rhs)))
    for symbol, state in leaf_states.items():
        ranks[symbol] = 0
        rules.append(Rule(state, rhs=(symbol,)))
    logger.debug(f"{g}: {len(g.rules)} rule symbols, {len(leaf_states)} leaf states")
    return Grammar(
        storage=storage,
        nonterminals=g.nonterminals + tuple(leaf_states.values()),
        terminals=terminal_table(list(ranks), ranks),
        initial=g.initial,
        encoding=g.encoding,
        rules=tuple(rules),
        grammar_class=GrammarClass.RT,
        name=derived_name(g, "trees"),
    )


def yield_grammar(g: Grammar) -> Grammar:
    """Replace every right-hand side tree by its yield; ε leaves vanish."""
    if g.grammar_class != GrammarClass.RT:
        raise PreconditionError("needs an RT grammar", grammar=str(g), construction="yield-grammar")
    ranks = g.ranks
    rules = [
        Rule(
            rule.lhs,
            rule.test,
            tuple(item for item in rule.rhs if isinstance(item, Call) or (ranks[item] == 0 and item != EPSILON)),
        )
        for rule in g.rules
    ]
    leaves = [symbol for symbol, rank in ranks.items() if rank == 0 and symbol != EPSILON]
    return Grammar(
        storage=g.storage,
        nonterminals=g.nonterminals,
        terminals=terminal_table(leaves),
        initial=g.initial,
        encoding=g.encoding,
        rules=tuple(rules),
        grammar_class=GrammarClass.CF,
        name=derived_name(g, "yield"),
    )


# ============================================================================
# TREES AND THEIR PATHS
# ============================================================================

def _racceptor(g: Grammar, klass: GrammarClass, construction: str) -> Grammar:
    if g.grammar_class != klass:
        raise PreconditionError(f"needs a {klass.value} r-acceptor", grammar=str(g), construction=construction)
    normal = g if is_normal_form(g) else (normalize_reg(g) if klass == GrammarClass.REG else normalize_rt(g))
    if not is_racceptor_deterministic(normal):
        raise PreconditionError("grammar is not r-acceptor deterministic", grammar=str(g), construction=construction)
    return desugar(normal, expand_chains=False)


def _barred(g: Grammar) -> Dict[str, str]:
    names = for_grammar(g)
    return {nonterminal: _claim(names, f"{nonterminal}'") for nonterminal in g.nonterminals}


def path_acceptor(g: Grammar, leaves: Iterable[str]) -> Grammar:
    """A deterministic REG r-acceptor imitating G on the paths of the input tree.

    G accepts mark(L) over Δ#; ``leaves`` is Δ0. After a leaf the barred copy
    of the next state takes over, so only the # below it can finish the path.
    The result L' satisfies tree_Δ(L') = L but is in general larger than π(L).
    """
    g = _racceptor(g, GrammarClass.RT, "path-acceptor")
    leaves = list(dict.fromkeys(leaves))
    ranks = g.ranks
    if ranks.get(MARK) != 0 or any(ranks.get(symbol) != 1 for symbol in leaves):
        raise PreconditionError(
            f"terminals are not a marked alphabet with leaves {leaves}",
            grammar=str(g),
            construction="path-acceptor",
        )
    bar = _barred(g)
    rules: List[Rule] = []
    for rule in g.rules:
        head = rule.rhs[0]
        if isinstance(head, Call):
            rules.append(rule)
            rules.append(Rule(bar[rule.lhs], rule.test, (Call(bar[head.nonterminal], head.chain),)))
        elif head == MARK:
            rules.append(Rule(bar[rule.lhs], rule.test))
        elif head in leaves:
            call = rule.rhs[1]
            rules.append(Rule(rule.lhs, rule.test, (head, Call(bar[call.nonterminal], call.chain))))
        else:
            for direction, call in enumerate(rule.rhs[1:], start=1):
                rules.append(Rule(rule.lhs, rule.test, (path_symbol(head, direction), call)))
    unmarked = {symbol: (0 if symbol in leaves else rank) for symbol, rank in ranks.items() if symbol != MARK}
    alphabet = PathAlphabet.of(unmarked)
    return Grammar(
        storage=g.storage,
        nonterminals=g.nonterminals + tuple(bar.values()),
        terminals=terminal_table(alphabet.symbols),
        initial=g.initial,
        encoding=g.encoding,
        rules=tuple(rules),
        grammar_class=GrammarClass.REG,
        name=derived_name(g, "paths"),
    )


def _decode_terminals(g: Grammar, alphabet: PathAlphabet) -> None:
    for symbol in g.terminal_names:
        try:
            alphabet.decode(symbol)
        except ValidationError as exc:
            raise PreconditionError(exc.message, grammar=str(g), construction="tree-acceptor") from None


def restrict_to_leaf_ending(g: Grammar, finals: Iterable[str], alphabet: PathAlphabet) -> Grammar:
    """An empty-store acceptor of L(G, N_H) ∩ (π(Δ) − Δ0)* Δ0.

    A copy A@ of every state records that a leaf was read; reading stops there
    and the final copies end the derivation. The intersection is prefix-free,
    so empty-store acceptance loses nothing.
    """
    finals = frozenset(finals)
    names = for_grammar(g)
    after = {nonterminal: _claim(names, f"{nonterminal}@") for nonterminal in g.nonterminals}
    leaves = set(alphabet.leaves)
    rules: List[Rule] = []
    for rule in g.rules:
        if not rule.calls:
            continue
        call = rule.calls[0]
        if rule.terminals:
            if rule.terminals[0] in leaves:
                rules.append(Rule(rule.lhs, rule.test, (rule.rhs[0], Call(after[call.nonterminal], call.chain))))
            else:
                rules.append(rule)
        else:
            rules.append(rule)
            if rule.lhs not in finals:
                rules.append(Rule(after[rule.lhs], rule.test, (Call(after[call.nonterminal], call.chain),)))
    rules.extend(Rule(after[nonterminal]) for nonterminal in g.nonterminals if nonterminal in finals)
    return g.with_rules(rules, nonterminals=g.nonterminals + tuple(after.values()), name=derived_name(g, "leafend"))


def tree_acceptor_from_paths(g: Grammar, finals: Iterable[str], ranks: Mapping[str, int]) -> Grammar:
    """A deterministic RT r-acceptor of mark(tree_Δ(L(G, N_H))).

    G reads path strings over π(Δ). The RT acceptor runs G on all paths at
    once: the rules of A reading σ.1, ..., σ.k are joined into one rule for σ.
    """
    alphabet = PathAlphabet.of(ranks)
    finals = frozenset(finals)
    unknown = finals - set(g.nonterminals)
    if unknown:
        raise PreconditionError(f"final states {sorted(unknown)} are not nonterminals", construction="tree-acceptor")
    g = _racceptor(g, GrammarClass.REG, "tree-acceptor")
    _decode_terminals(g, alphabet)
    g = restrict_to_leaf_ending(g, finals, alphabet)
    identity = g.storage.identity()
    names = for_grammar(g)
    leaf_final = _claim(names, "Q")

    reading: Dict[Tuple[str, str, int], List[Rule]] = {}
    rules: List[Rule] = []
    for rule in g.rules:
        if not rule.rhs:
            rules.append(Rule(rule.lhs, rule.test, (MARK,)))
            continue
        head = rule.rhs[0]
        if isinstance(head, Call):
            rules.append(rule)
            continue
        symbol, direction = alphabet.decode(head)
        if direction is None:
            tail = rule.rhs[1:] or (Call(leaf_final, (identity,)),)
            rules.append(Rule(rule.lhs, rule.test, (symbol,) + tuple(tail)))
        elif len(rule.rhs) == 2:
            reading.setdefault((rule.lhs, symbol, direction), []).append(rule)

    emitted = 0
    exclusive = g.storage.exclusive
    for nonterminal in g.nonterminals:
        for symbol, rank in alphabet.ranks:
            if rank == 0:
                continue
            per_direction = [reading.get((nonterminal, symbol, i), []) for i in range(1, rank + 1)]
            if not all(per_direction):
                continue
            for picked in choices(*per_direction):
                test = conj(*(rule.test for rule in picked))
                if test == FALSE or not satisfiable(test, exclusive):
                    continue
                rules.append(Rule(nonterminal, test, (symbol,) + tuple(rule.rhs[1] for rule in picked)))
                emitted += 1
    nonterminals = g.nonterminals
    if any(call.nonterminal == leaf_final for rule in rules for call in rule.calls):
        rules.append(Rule(leaf_final, rhs=(MARK,)))
        nonterminals += (leaf_final,)
    marked = marked_alphabet(alphabet.rank_of)
    logger.debug(f"{g}: {emitted} joined rules")
    return Grammar(
        storage=g.storage,
        nonterminals=nonterminals,
        terminals=terminal_table(list(marked), marked),
        initial=g.initial,
        encoding=g.encoding,
        rules=tuple(rules),
        grammar_class=GrammarClass.RT,
        name=derived_name(g, "trees"),
    )


__all__ = [
    "derivation_tree_acceptor",
    "path_acceptor",
    "restrict_to_leaf_ending",
    "tree_acceptor_from_paths",
    "yield_grammar",
]
