"""Acceptance: d_accept, the look-ahead decision acc(G)(c), and final-state runs.

All three explore the graph of instances A(c) instead of sentential forms: an
instance accepts when one of its enabled rules has only accepting instances on
the right. The least fixpoint over the explored graph is exact for the part
of the graph that was fully expanded.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, List, Optional, Set, Tuple

from config.settings import settings
from grammar.model import Grammar, GrammarClass, Instance
from grammar.normal_forms import is_normal_form, normalize_reg
from models.errors import FrontierOverflow, PreconditionError
from models.responses import AcceptOutcome
from models.schemas import Bounds
from engine.search import instantiate

_Children = Tuple[Instance, ...]


@dataclass
class InstanceGraph:
    """Instances reachable from a root, each with the instance tuples of its enabled rules."""

    root: Instance
    successors: Dict[Instance, List[_Children]] = field(default_factory=dict)
    exhaustive: bool = True

    def accepted(self) -> Set[Instance]:
        accepted: Set[Instance] = set()
        changed = True
        while changed:
            changed = False
            for instance, options in self.successors.items():
                if instance in accepted:
                    continue
                if any(all(child in accepted for child in option) for option in options):
                    accepted.add(instance)
                    changed = True
        return accepted

    def has_cycle(self) -> bool:
        """A derivation cycle A(c) ⇒ ... A(c) among fully expanded instances."""
        WHITE, GREY, BLACK = 0, 1, 2
        colour: Dict[Instance, int] = {}
        for start in self.successors:
            if colour.get(start, WHITE) != WHITE:
                continue
            stack = [(start, iter(self._children(start)))]
            colour[start] = GREY
            while stack:
                node, children = stack[-1]
                child = next(children, None)
                if child is None:
                    colour[node] = BLACK
                    stack.pop()
                    continue
                state = colour.get(child, WHITE)
                if state == GREY:
                    return True
                if state == WHITE and child in self.successors:
                    colour[child] = GREY
                    stack.append((child, iter(self._children(child))))
        return False

    def _children(self, instance: Instance) -> Iterable[Instance]:
        for option in self.successors.get(instance, ()):
            yield from option


def explore_instances(g: Grammar, root: Instance, depth: Optional[int], max_items: int) -> InstanceGraph:
    """Breadth-first expansion of instances; ``depth`` None means unbounded."""
    graph = InstanceGraph(root)
    queue = deque([(root, 0)])
    queued = {root}
    while queue:
        instance, level = queue.popleft()
        if depth is not None and level >= depth:
            graph.exhaustive = False
            continue
        options: List[_Children] = []
        for _, rule in g.rules_for(instance.nonterminal):
            form = instantiate(rule, instance.configuration, g)
            if form is None:
                continue
            children = tuple(item for item in form if isinstance(item, Instance))
            options.append(children)
            for child in children:
                if child not in queued:
                    queued.add(child)
                    queue.append((child, level + 1))
        graph.successors[instance] = options
        if len(queued) > max_items:
            raise FrontierOverflow(f"more than {max_items} instances explored", grammar=str(g))
    return graph


def _root(g: Grammar, u) -> Optional[Instance]:
    s = g.storage
    c = s.encode(g.encoding, s.coerce_input(g.encoding, u))
    return None if c is None else Instance(g.initial, c)


def d_accept(g: Grammar, u, bounds: Bounds) -> AcceptOutcome:
    """Whether u ∈ A(G).

    RejectedWithinBounds requires the reachable derivations to be finite and
    fully explored within ``max_steps``; cycles or cut branches give Exhausted.
    """
    root = _root(g, u)
    if root is None:
        return AcceptOutcome.REJECTED_WITHIN_BOUNDS
    depth = None if g.storage.noetherian else bounds.max_steps
    graph = explore_instances(g, root, depth, bounds.max_forms)
    if root in graph.accepted():
        return AcceptOutcome.ACCEPTED
    if graph.exhaustive and not graph.has_cycle():
        return AcceptOutcome.REJECTED_WITHIN_BOUNDS
    return AcceptOutcome.EXHAUSTED


def configuration_accepted(g: Grammar, c, step_bound: int) -> Optional[bool]:
    """acc(G)(c): True, False, or None when the bound cut the search before a decision.

    Unlike d_accept, a cycle in a fully explored graph is no obstacle here:
    instances outside the least fixpoint have no finite derivation.
    """
    root = Instance(g.initial, c)
    depth = None if g.storage.noetherian else step_bound
    graph = explore_instances(g, root, depth, settings.MAX_FORMS)
    if root in graph.accepted():
        return True
    return False if graph.exhaustive else None


def accept_final_state(g: Grammar, finals: Iterable[str], w) -> bool:
    """Final-state acceptance of w by a deterministic REG r-acceptor."""
    from engine.recognizer import RegRecognizer

    finals = frozenset(finals)
    unknown = finals - set(g.nonterminals)
    if unknown:
        raise PreconditionError(f"final states {sorted(unknown)} are not nonterminals", grammar=str(g))
    if g.grammar_class != GrammarClass.REG:
        raise PreconditionError("final-state acceptance needs a REG grammar", grammar=str(g))
    from grammar.determinism import is_racceptor_deterministic

    normal = g if is_normal_form(g) else normalize_reg(g)
    if not is_racceptor_deterministic(normal):
        raise PreconditionError("grammar is not r-acceptor deterministic", grammar=str(g))
    if any(symbol not in g.terminal_names for symbol in w):
        return False
    return RegRecognizer(g, finals=finals).accepts_word(w)


def final_state_language(g: Grammar, finals: FrozenSet[str], words: Iterable) -> FrozenSet:
    """The words among ``words`` accepted by final state."""
    from engine.recognizer import RegRecognizer

    recognizer = RegRecognizer(g, finals=frozenset(finals))
    return frozenset(word for word in words if recognizer.accepts_word(word))
