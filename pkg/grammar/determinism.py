"""Determinism checks: transducer determinism and r-acceptor determinism.

Both are sound propositional checks over the rule tests, extended by the
exclusivity axioms of the storage type. Overlaps that survive are refuted by
searching reachable configurations for one that satisfies both tests.
"""
from __future__ import annotations

from itertools import combinations
from typing import Iterator, List, Optional, Sequence, Tuple

from models.errors import LookaheadUnknown, PreconditionError, ValidationError
from models.responses import DeterminismResult, Verdict
from models.schemas import Bounds
from grammar.model import Grammar, GrammarClass, Rule, rules_by_lhs
from storage.base import eval_test, is_racceptor_deterministic_storage, reachable_configurations
from storage.expressions import Test, conj, satisfiable
from utils.logger import get_logger

logger = get_logger(__name__)

Overlap = Tuple[int, int, Test]


def overlapping_rules(g: Grammar, guard=None) -> List[Overlap]:
    """Pairs of same-lhs rules whose joint test is satisfiable.

    ``guard(r1, r2)`` restricts the pairs that have to be disjoint.
    """
    found: List[Overlap] = []
    for rules in rules_by_lhs(g).values():
        for (i, first), (j, second) in combinations(rules, 2):
            if guard is not None and not guard(first, second):
                continue
            joint = conj(first.test, second.test)
            if satisfiable(joint, g.storage.exclusive):
                found.append((i, j, joint))
    return found


def start_configurations(g: Grammar, max_input: int) -> Iterator:
    try:
        inputs = list(g.storage.inputs(g.encoding, max_input))
    except ValidationError:
        return
    for u in inputs:
        c = g.storage.encode(g.encoding, g.storage.coerce_input(g.encoding, u))
        if c is not None:
            yield c


def find_witness(g: Grammar, overlaps: Sequence[Overlap], limit: int, max_input: int) -> Optional[Tuple[Overlap, object]]:
    """A reachable configuration satisfying the joint test of some overlap."""
    chains = {call.chain for rule in g.rules for call in rule.calls}
    for c in reachable_configurations(g.storage, start_configurations(g, max_input), chains, limit):
        for overlap in overlaps:
            try:
                if eval_test(overlap[2], c, g.storage):
                    return overlap, c
            except LookaheadUnknown:
                continue
    return None


def is_deterministic(g: Grammar, bounds: Optional[Bounds] = None, limit: Optional[int] = None) -> DeterminismResult:
    """Yes, No with a witness configuration, or unknown when neither could be shown."""
    overlaps = overlapping_rules(g)
    if not overlaps:
        return DeterminismResult(verdict=Verdict.YES)
    if limit is None:
        from config.settings import settings

        limit = settings.WITNESS_CONFIGURATIONS
    max_input = bounds.max_input if bounds is not None else 4
    found = find_witness(g, overlaps, limit, max_input)
    if found is not None:
        (i, j, _), c = found
        return DeterminismResult(verdict=Verdict.NO, rules=[i, j], witness=str(c))
    i, j, joint = overlaps[0]
    logger.debug(f"{g}: {len(overlaps)} overlaps, none refuted within {limit} configurations")
    return DeterminismResult(
        verdict=Verdict.UNKNOWN,
        rules=[i, j],
        note=f"test '{joint}' is satisfiable but no reachable configuration satisfies it",
    )


def lead_symbol(rule: Rule) -> Optional[str]:
    """The terminal read (REG) or the root label (RT); None for λ-moves."""
    if rule.rhs and isinstance(rule.rhs[0], str):
        return rule.rhs[0]
    return None


def _may_compete(first: Rule, second: Rule) -> bool:
    a1, a2 = lead_symbol(first), lead_symbol(second)
    return a1 is None or a2 is None or a1 == a2


def is_racceptor_deterministic(g: Grammar) -> bool:
    """r-acceptor determinism of a REG or RT grammar in normal form."""
    from grammar.normal_forms import is_normal_form

    if g.grammar_class not in (GrammarClass.REG, GrammarClass.RT):
        raise PreconditionError("r-acceptor determinism applies to REG and RT grammars", grammar=str(g))
    if not is_racceptor_deterministic_storage(g.storage, g.encoding):
        raise PreconditionError(
            f"storage {g.storage.expr} with encoding {g.encoding} is not r-acceptor deterministic",
            grammar=str(g),
        )
    if not is_normal_form(g):
        raise PreconditionError("r-acceptor determinism is checked on normal-form grammars only", grammar=str(g))
    return not overlapping_rules(g, guard=_may_compete)
