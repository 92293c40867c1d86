"""Removal of rule sugar: else branches, disjunctive tests, constant tests and
instruction chains."""
from __future__ import annotations

from typing import Dict, List, Sequence, Tuple

from grammar.fresh import for_grammar
from grammar.model import Call, Grammar, Rule, RhsItem
from storage.expressions import FALSE, Test, neg, simplify, split_disjunction
from storage.symbols import Op
from utils.logger import get_logger

logger = get_logger(__name__)


def if_then_else(lhs: str, test: Test, then_rhs: Sequence[RhsItem], else_rhs: Sequence[RhsItem]) -> List[Rule]:
    """``A -> if b then x else y`` abbreviates the rules for b and for not b."""
    return [Rule(lhs, test, tuple(then_rhs)), Rule(lhs, neg(test), tuple(else_rhs))]


def split_rule(rule: Rule) -> List[Rule]:
    """Simplify the test, drop the rule if it is false, split a top-level or."""
    return [
        Rule(rule.lhs, part, rule.rhs)
        for part in split_disjunction(simplify(rule.test))
        if part != FALSE
    ]


def desugar(g: Grammar, expand_chains: bool = True) -> Grammar:
    rules: List[Rule] = []
    for rule in g.rules:
        rules.extend(split_rule(rule))
    nonterminals = list(g.nonterminals)
    if expand_chains:
        rules, added = expand_instruction_chains(g, rules)
        nonterminals.extend(added)
    return g.with_rules(rules, nonterminals=tuple(nonterminals))


def expand_instruction_chains(g: Grammar, rules: Sequence[Rule]) -> Tuple[List[Rule], List[str]]:
    """Replace B(f1;...;fk) by B1(f1) with B1 -> B2(f2), ..., B(k-1) -> B(fk).

    Identical occurrences share their intermediate nonterminals.
    """
    names = for_grammar(g)
    shared: Dict[Tuple[str, Tuple[Op, ...]], str] = {}
    added: List[str] = []
    extra: List[Rule] = []

    def entry(nonterminal: str, chain: Tuple[Op, ...]) -> str:
        # nonterminal reached after applying chain[0]; it runs the rest of the chain
        key = (nonterminal, chain[1:])
        if key in shared:
            return shared[key]
        current = names.fresh(nonterminal)
        shared[key] = current
        added.append(current)
        rest = chain[1:]
        if len(rest) == 1:
            extra.append(Rule(current, rhs=(Call(nonterminal, rest),)))
        else:
            extra.append(Rule(current, rhs=(Call(entry(nonterminal, rest), rest[:1]),)))
        return current

    result: List[Rule] = []
    for rule in rules:
        rhs = []
        for item in rule.rhs:
            if isinstance(item, Call) and len(item.chain) > 1:
                rhs.append(Call(entry(item.nonterminal, item.chain), item.chain[:1]))
            else:
                rhs.append(item)
        result.append(Rule(rule.lhs, rule.test, tuple(rhs)))
    if added:
        logger.debug(f"{g}: {len(added)} chain nonterminals introduced")
    return result + extra, added
