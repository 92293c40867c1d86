"""Bounded derivation search: single steps, L(G), T(G) at one input, tree languages,
derivation traces and the bounded functionality and prefix-freeness checks."""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from math import inf
from typing import Dict, Iterable, Iterator, List, Optional, Set, Tuple

from tqdm import tqdm

from grammar.model import Call, Grammar, GrammarClass, Instance, Rule, SententialForm, format_form
from models.errors import FrontierOverflow, PreconditionError, ValidationError
from models.responses import FunctionalityReport, PrefixFreeReport
from models.schemas import Bounds, LanguageSample
from models.tree import Tree, prefix_symbols, tree_from_prefix
from storage.base import InputKind, apply_chain, eval_test
from utils.export import format_item, length_lex_key
from utils.logger import get_logger

logger = get_logger(__name__)


class Strategy(str, Enum):
    LEFTMOST = "leftmost"
    ANY = "any"


# ============================================================================
# SINGLE STEPS
# ============================================================================

def instantiate(rule: Rule, c, g: Grammar) -> Optional[SententialForm]:
    """The right-hand side at configuration c, or None when the rule is not enabled.

    Enabled means the test holds and every instruction chain in the right-hand
    side is defined on c, including chains of calls that would later derive λ.
    """
    s = g.storage
    if not eval_test(rule.test, c, s):
        return None
    result: List = []
    for item in rule.rhs:
        if isinstance(item, Call):
            moved = apply_chain(item.chain, c, s)
            if moved is None:
                return None
            result.append(Instance(item.nonterminal, moved))
        else:
            result.append(item)
    return tuple(result)


def derive_step(g: Grammar, sf: SententialForm, rule_index: int, position: int) -> Optional[SententialForm]:
    """Rewrite the instance at ``position`` with rule ``rule_index``; None when not enabled."""
    if not 0 <= position < len(sf) or not isinstance(sf[position], Instance):
        raise PreconditionError(f"position {position} of '{format_form(sf)}' is not a nonterminal", grammar=str(g))
    instance = sf[position]
    rule = g.rules[rule_index]
    if rule.lhs != instance.nonterminal:
        raise PreconditionError(
            f"rule {rule_index} rewrites {rule.lhs}, not {instance.nonterminal}",
            grammar=str(g),
            rule_index=rule_index,
        )
    replacement = instantiate(rule, instance.configuration, g)
    if replacement is None:
        return None
    return sf[:position] + replacement + sf[position + 1:]


def _instance_positions(form: SententialForm, strategy: Strategy) -> List[int]:
    positions = [index for index, item in enumerate(form) if isinstance(item, Instance)]
    if strategy == Strategy.LEFTMOST:
        return positions[:1]
    return positions


def successors(g: Grammar, form: SententialForm, strategy: Strategy = Strategy.LEFTMOST) -> Iterator[Tuple[int, int, SententialForm]]:
    """(rule index, position, next form) for every enabled step."""
    for position in _instance_positions(form, strategy):
        instance = form[position]
        for index, rule in g.rules_for(instance.nonterminal):
            replacement = instantiate(rule, instance.configuration, g)
            if replacement is not None:
                yield index, position, form[:position] + replacement + form[position + 1:]


# ============================================================================
# INPUTS AND LOWER BOUNDS
# ============================================================================

def enumerate_inputs(g: Grammar, max_input: int) -> Iterator[Tuple[object, object]]:
    """(input element, initial configuration) pairs in size order; undefined encodings are skipped."""
    s, e = g.storage, g.encoding
    try:
        inputs = s.inputs(e, max_input)
        for u in inputs:
            c = s.encode(e, s.coerce_input(e, u))
            if c is not None:
                yield u, c
    except ValidationError as error:
        raise PreconditionError(str(error), grammar=str(g)) from None


def has_finite_inputs(g: Grammar) -> bool:
    return g.storage.input_kind(g.encoding) == InputKind.UNIT


def minimal_sizes(g: Grammar) -> Dict[str, float]:
    """Least number of terminal symbols each nonterminal can derive, ignoring storage.

    A sound lower bound: storage only disables derivations. Nonterminals that
    never terminate get infinity.
    """
    sizes: Dict[str, float] = {symbol: inf for symbol in g.nonterminals}
    changed = True
    while changed:
        changed = False
        for rule in g.rules:
            total = len(rule.terminals) + sum(sizes.get(call.nonterminal, inf) for call in rule.calls)
            if total < sizes.get(rule.lhs, inf):
                sizes[rule.lhs] = total
                changed = True
    return sizes


def _lower_bound(form: SententialForm, sizes: Dict[str, float]) -> float:
    total = 0
    for item in form:
        total += sizes.get(item.nonterminal, inf) if isinstance(item, Instance) else 1
    return total


# ============================================================================
# BREADTH-FIRST SEARCH
# ============================================================================

@dataclass
class SearchResult:
    outputs: Set[Tuple[str, ...]]
    complete_up_to: int
    forms_seen: int


def explore(
    g: Grammar,
    starts: Iterable[SententialForm],
    bounds: Bounds,
    strategy: Strategy = Strategy.LEFTMOST,
    progress: bool = False,
) -> SearchResult:
    """Terminal forms reachable within the bounds.

    Forms whose lower bound exceeds ``max_len`` are cut; they cannot yield an
    item within the bound. Forms left when ``max_steps`` runs out lower the
    certified length to just below their own lower bound.
    """
    sizes = minimal_sizes(g)
    seen: Set[SententialForm] = set()
    outputs: Set[Tuple[str, ...]] = set()
    frontier: List[SententialForm] = []
    for form in starts:
        if _lower_bound(form, sizes) <= bounds.max_len and form not in seen:
            seen.add(form)
            frontier.append(form)

    steps = tqdm(range(bounds.max_steps), desc="derivation steps", disable=not progress, leave=False)
    for _ in steps:
        if not frontier:
            break
        next_frontier: List[SententialForm] = []
        for form in frontier:
            for _, _, new in successors(g, form, strategy):
                if _lower_bound(new, sizes) > bounds.max_len or new in seen:
                    continue
                seen.add(new)
                if len(seen) > bounds.max_forms:
                    raise FrontierOverflow(
                        f"more than {bounds.max_forms} sentential forms",
                        grammar=str(g),
                    )
                if any(isinstance(item, Instance) for item in new):
                    next_frontier.append(new)
                else:
                    outputs.add(new)
        frontier = next_frontier
    steps.close()

    if frontier:
        pending = min(_lower_bound(form, sizes) for form in frontier)
        complete_up_to = int(min(bounds.max_len, pending - 1))
        logger.warning(
            f"{g}: {len(frontier)} forms unfinished after {bounds.max_steps} steps; "
            f"sample complete up to {complete_up_to}"
        )
    else:
        complete_up_to = bounds.max_len
    logger.debug(f"{g}: {len(seen)} forms, {len(outputs)} outputs")
    return SearchResult(outputs, complete_up_to, len(seen))


def _start_forms(g: Grammar, configurations: Iterable) -> Iterator[SententialForm]:
    for c in configurations:
        yield (Instance(g.initial, c),)


def _sample(g: Grammar, result: SearchResult, bounds: Bounds, items, input_bound=None, measure="length") -> LanguageSample:
    return LanguageSample(
        items=frozenset(items),
        bounds=bounds,
        complete_up_to=result.complete_up_to,
        input_bound=input_bound,
        measure=measure,
    )


def _require_strings(g: Grammar, operation: str) -> None:
    if g.grammar_class == GrammarClass.RT:
        raise PreconditionError(f"{operation} works on string grammars; use the tree operations for RT", grammar=str(g))


def generate(
    g: Grammar,
    bounds: Bounds,
    strategy: Strategy = Strategy.LEFTMOST,
    progress: bool = False,
) -> LanguageSample:
    """L(G) up to ``max_len``, over all inputs of size at most ``max_input``."""
    _require_strings(g, "generate")
    configurations = [c for _, c in enumerate_inputs(g, bounds.max_input)]
    result = explore(g, _start_forms(g, configurations), bounds, strategy, progress)
    input_bound = None if has_finite_inputs(g) else bounds.max_input
    return _sample(g, result, bounds, result.outputs, input_bound)


def transduce(g: Grammar, u, bounds: Bounds, strategy: Strategy = Strategy.LEFTMOST) -> LanguageSample:
    """T(G) at input u: every output reachable within the bounds; empty when m(e)(u) is undefined."""
    s = g.storage
    c = s.encode(g.encoding, s.coerce_input(g.encoding, u))
    if c is None:
        return LanguageSample(items=frozenset(), bounds=bounds, complete_up_to=bounds.max_len)
    result = explore(g, _start_forms(g, [c]), bounds, strategy)
    if g.grammar_class == GrammarClass.RT:
        trees = [tree_from_prefix(output, g.ranks) for output in result.outputs]
        return _sample(g, result, bounds, trees, measure="size")
    return _sample(g, result, bounds, result.outputs)


def generate_trees(g: Grammar, bounds: Bounds, strategy: Strategy = Strategy.LEFTMOST) -> LanguageSample:
    """The tree language of an RT grammar up to tree size ``max_len``."""
    if g.grammar_class != GrammarClass.RT:
        raise PreconditionError("generate_trees needs an RT grammar", grammar=str(g))
    configurations = [c for _, c in enumerate_inputs(g, bounds.max_input)]
    result = explore(g, _start_forms(g, configurations), bounds, strategy)
    trees = [tree_from_prefix(output, g.ranks) for output in result.outputs]
    input_bound = None if has_finite_inputs(g) else bounds.max_input
    return _sample(g, result, bounds, trees, input_bound, measure="size")


# ============================================================================
# TRACES
# ============================================================================

@dataclass(frozen=True)
class DerivationTrace:
    """forms[i+1] results from forms[i] by rule rules[i] at position positions[i]."""

    forms: Tuple[SententialForm, ...]
    rules: Tuple[int, ...]
    positions: Tuple[int, ...]

    def steps(self) -> List[Tuple[SententialForm, int, int]]:
        return list(zip(self.forms, self.rules, self.positions))

    def __len__(self) -> int:
        return len(self.rules)

    def render(self) -> str:
        lines = [f"   {format_form(self.forms[0])}"]
        for number, (form, rule, position) in enumerate(zip(self.forms[1:], self.rules, self.positions), 1):
            lines.append(f"{number:>2} ⇒ {format_form(form)}    [rule {rule} at {position}]")
        return "\n".join(lines)


def find_derivation(g: Grammar, u, w, bounds: Bounds) -> Optional[DerivationTrace]:
    """A leftmost derivation of output w (a word or a tree) from input u."""
    s = g.storage
    c = s.encode(g.encoding, s.coerce_input(g.encoding, u))
    if c is None:
        return None
    target = prefix_symbols(w) if isinstance(w, Tree) else tuple(w)
    start: SententialForm = (Instance(g.initial, c),)
    parents: Dict[SententialForm, Tuple[Optional[SententialForm], int, int]] = {start: (None, -1, -1)}
    frontier = [start]
    for _ in range(bounds.max_steps):
        next_frontier = []
        for form in frontier:
            for rule, position, new in successors(g, form):
                if new in parents or not _consistent(new, target):
                    continue
                parents[new] = (form, rule, position)
                if len(parents) > bounds.max_forms:
                    raise FrontierOverflow(f"more than {bounds.max_forms} forms while tracing", grammar=str(g))
                if new == target:
                    return _trace(parents, new)
                next_frontier.append(new)
        frontier = next_frontier
        if not frontier:
            break
    return None


def _consistent(form: SententialForm, target: Tuple[str, ...]) -> bool:
    """The terminal prefix matches and the terminal count fits."""
    terminals = [item for item in form if not isinstance(item, Instance)]
    if len(terminals) > len(target):
        return False
    for index, item in enumerate(form):
        if isinstance(item, Instance):
            return True
        if item != target[index]:
            return False
    return len(form) == len(target)


def _trace(parents, last: SententialForm) -> DerivationTrace:
    forms, rules, positions = [last], [], []
    current = last
    while True:
        previous, rule, position = parents[current]
        if previous is None:
            break
        forms.append(previous)
        rules.append(rule)
        positions.append(position)
        current = previous
    return DerivationTrace(tuple(reversed(forms)), tuple(reversed(rules)), tuple(reversed(positions)))


# ============================================================================
# BOUNDED CHECKS
# ============================================================================

def is_functional(g: Grammar, bounds: Bounds) -> FunctionalityReport:
    """At most one output per enumerated input, as far as the bounds reach."""
    checked = 0
    for u, _ in enumerate_inputs(g, bounds.max_input):
        checked += 1
        outputs = transduce(g, u, bounds).sorted_items()
        if len(outputs) > 1:
            return FunctionalityReport(
                functional=False,
                inputs_checked=checked,
                witness_input=str(u),
                outputs=[format_item(item) for item in outputs],
            )
    return FunctionalityReport(functional=True, inputs_checked=checked)


def is_prefix_free(sample: LanguageSample) -> PrefixFreeReport:
    """No item is a proper prefix of another item of the sample."""
    items = sorted(sample.items, key=length_lex_key)
    present = set(items)
    for word in items:
        for cut in range(len(word)):
            if word[:cut] in present:
                return PrefixFreeReport(
                    prefix_free=False,
                    checked_up_to=sample.complete_up_to,
                    witness=[format_item(word[:cut]), format_item(word)],
                )
    return PrefixFreeReport(prefix_free=True, checked_up_to=sample.complete_up_to)
