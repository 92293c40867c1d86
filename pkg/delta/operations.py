"""tree_Δ(L) and δ_Δ(L) = yield(tree_Δ(L)) up to a tree size bound.

Trees are built top-down. Each node carries the recognizer state reached on
the path from the root, so a label σ of rank k is only tried when every
direction σ.i keeps the state alive, and a leaf is only placed where its path
is accepted.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product as combinations_of
from typing import Callable, Dict, FrozenSet, Iterable, List, Mapping, Optional, Tuple

from grammar.model import Grammar, GrammarClass
from engine.recognizer import FiniteRecognizer, Recognizer, RegRecognizer, accepts_word, recognizer_for
from engine.search import generate, has_finite_inputs
from delta.paths import Path, PathAlphabet, path_symbol, paths
from models.errors import PreconditionError, UncertifiedSampleError, ValidationError
from models.responses import ContinuityReport
from models.schemas import Bounds, LanguageSample
from models.tree import Tree, compositions, enumerate_trees, tree_yield
from utils.caching import SynchronizedCache
from utils.export import format_item
from utils.logger import get_logger

logger = get_logger(__name__)


def _single_input(g: Grammar) -> Grammar:
    if not has_finite_inputs(g):
        raise UncertifiedSampleError(
            "path languages are read from grammars with a single input element only",
            grammar=str(g),
            construction="delta",
        )
    return g


@dataclass(frozen=True)
class DeltaSpec:
    """Target alphabet Δ, a path language over π(Δ) and the tree size bound.

    The language is either a finite set of path strings or a grammar; REG
    grammars may accept by final state through ``finals``.
    """

    alphabet: PathAlphabet
    size_bound: int
    paths: Optional[FrozenSet[Path]] = None
    grammar: Optional[Grammar] = field(default=None, compare=False)
    finals: Optional[FrozenSet[str]] = None

    def __post_init__(self) -> None:
        if self.size_bound <= 0:
            raise ValidationError(f"size bound must be positive, got {self.size_bound}")
        if (self.paths is None) == (self.grammar is None):
            raise ValidationError("a delta needs exactly one of a path set or a grammar")
        if self.paths is not None:
            for path in self.paths:
                for symbol in path:
                    self.alphabet.decode(symbol)
        else:
            for symbol in self.grammar.terminal_names:
                self.alphabet.decode(symbol)

    @classmethod
    def of_paths(cls, ranks: Mapping[str, int], language: Iterable[Path], size_bound: int) -> "DeltaSpec":
        return cls(PathAlphabet.of(ranks), size_bound, paths=frozenset(tuple(path) for path in language))

    @classmethod
    def of_grammar(
        cls,
        ranks: Mapping[str, int],
        g: Grammar,
        size_bound: int,
        finals: Optional[Iterable[str]] = None,
    ) -> "DeltaSpec":
        return cls(
            PathAlphabet.of(ranks),
            size_bound,
            grammar=g,
            finals=None if finals is None else frozenset(finals),
        )

    def with_paths(self, language: Iterable[Path]) -> "DeltaSpec":
        return DeltaSpec(self.alphabet, self.size_bound, paths=frozenset(language))

    def recognizer(self) -> Recognizer:
        if self.paths is not None:
            return FiniteRecognizer(self.paths)
        g = _single_input(self.grammar)
        if self.finals is not None:
            if g.grammar_class != GrammarClass.REG:
                raise PreconditionError("final-state acceptance needs a REG grammar", grammar=str(g))
            return RegRecognizer(g, finals=self.finals)
        return recognizer_for(g)


class TreeSearch:
    """Memoized top-down construction: trees_of(state, n) are the accepted trees of size n."""

    def __init__(self, alphabet: PathAlphabet, recognizer: Recognizer) -> None:
        self.alphabet = alphabet
        self.recognizer = recognizer
        self._steps = SynchronizedCache()
        self._trees = SynchronizedCache()

    def step(self, state, symbol: str):
        return self._steps.get_or_compute((state, symbol), lambda: self.recognizer.step(state, symbol))

    def trees_of(self, state, size: int) -> Tuple[Tree, ...]:
        return self._trees.get_or_compute((state, size), lambda: self._build(state, size))

    def _build(self, state, size: int) -> Tuple[Tree, ...]:
        found: List[Tree] = []
        for symbol, rank in self.alphabet.ranks:
            if rank == 0:
                if size == 1 and self.recognizer.accepts(self.step(state, symbol)):
                    found.append(Tree(symbol))
                continue
            if size < rank + 1:
                continue
            children = [self.step(state, path_symbol(symbol, i)) for i in range(1, rank + 1)]
            if not all(children):
                continue
            for sizes in compositions(size - 1, rank):
                pools = [self.trees_of(child, part) for child, part in zip(children, sizes)]
                if not all(pools):
                    continue
                found.extend(Tree(symbol, combo) for combo in combinations_of(*pools))
        return tuple(found)


def _tree_sample(spec: DeltaSpec, trees: Iterable[Tree]) -> LanguageSample:
    return LanguageSample(
        items=frozenset(trees),
        bounds=Bounds(max_len=spec.size_bound),
        complete_up_to=spec.size_bound,
        measure="size",
    )


def tree_delta(spec: DeltaSpec) -> LanguageSample:
    """All trees over Δ of size at most the bound whose paths all lie in L."""
    recognizer = spec.recognizer()
    start = recognizer.start()
    if not start:
        return _tree_sample(spec, ())
    search = TreeSearch(spec.alphabet, recognizer)
    trees: List[Tree] = []
    for size in range(1, spec.size_bound + 1):
        trees.extend(search.trees_of(start, size))
    logger.debug(f"tree_delta: {len(trees)} trees, {len(search._trees)} memo entries, {search._trees.hits} hits")
    return _tree_sample(spec, trees)


def _generated_paths(spec: DeltaSpec, longest: int) -> FrozenSet[Path]:
    """The path words of length at most ``longest``, generated from the grammar."""
    from constructions.acceptance import final_state_sample

    g = _single_input(spec.grammar)
    bounds = Bounds(max_len=longest)
    sample = generate(g, bounds) if spec.finals is None else final_state_sample(g, spec.finals, bounds)
    if sample.complete_up_to < longest:
        raise UncertifiedSampleError(
            f"path words are complete only up to length {sample.complete_up_to}, need {longest}",
            grammar=str(g),
            construction="delta",
        )
    return sample.items


def naive_tree_delta(spec: DeltaSpec) -> LanguageSample:
    """Enumerate every tree up to the bound and keep those whose paths are all in L.

    Grammar languages are generated up to the longest path instead of being read
    by the recognizer the pruned search uses.
    """
    candidates = list(enumerate_trees(spec.alphabet.rank_of, spec.size_bound))
    if spec.paths is not None:
        language = spec.paths
    else:
        longest = max((len(path) for t in candidates for path in paths(t)), default=1)
        language = _generated_paths(spec, longest)
    trees = [t for t in candidates if all(path in language for path in paths(t))]
    return _tree_sample(spec, trees)


def delta(spec: DeltaSpec, trees: Optional[LanguageSample] = None) -> LanguageSample:
    """Yields of tree_Δ(L); a short yield may still come from a tree beyond the bound."""
    trees = trees if trees is not None else tree_delta(spec)
    sample = LanguageSample(
        items=frozenset(tree_yield(t) for t in trees.items),
        bounds=Bounds(max_len=spec.size_bound),
        complete_up_to=0,
        measure="length",
    )
    sample.notes.append(f"yields of trees of size at most {spec.size_bound}")
    return sample


Sampler = Callable[[DeltaSpec, Tree], Iterable[FrozenSet[Path]]]


def witness_paths(spec: DeltaSpec, t: Tree) -> Iterable[FrozenSet[Path]]:
    """The smallest finite subset of L producing t: its own paths."""
    yield paths(t)


def continuity_check(spec: DeltaSpec, finite_subsets: Sampler = witness_paths) -> ContinuityReport:
    """Every item of δ_Δ(L) comes from δ_Δ(F) for some finite F ⊆ L, and no F adds items."""
    trees = tree_delta(spec)
    items = delta(spec, trees).items
    recognizer = spec.recognizer()
    witnesses: Dict[str, List[str]] = {}
    extra: List[str] = []
    for t in sorted(trees.items, key=lambda tree: (tree.size, str(tree))):
        label = format_item(tree_yield(t))
        if label in witnesses:
            continue
        for subset in finite_subsets(spec, t):
            if not all(accepts_word(recognizer, path) for path in subset):
                continue
            produced = delta(spec.with_paths(subset)).items
            extra.extend(format_item(word) for word in produced - items)
            if tree_yield(t) in produced:
                witnesses[label] = sorted(" ".join(path) for path in subset)
                break
    missing = sorted(format_item(word) for word in items if format_item(word) not in witnesses)
    return ContinuityReport(
        holds=not missing and not extra,
        items_checked=len(items),
        witnesses=witnesses,
        missing=missing + sorted(set(extra)),
    )

