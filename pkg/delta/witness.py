"""A linear language K and alphabet Δ with δ_Δ(K) = h(L ∩ M) for linear L and M.

Each tree of tree_Δ(K) is a spine of Σ-nodes ending in $(ε, ε). Going right
along the spine spells w; the paths through $ force w ∈ L and w ∈ M, and the
left handle of the node for a hangs h(a) below a #_k node.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Iterable, List, Mapping, Sequence, Tuple

from config.constants import EPSILON
from constructions.pushdown import derived_name
from delta.operations import DeltaSpec
from delta.paths import path_symbol
from grammar.fresh import FreshNames
from grammar.model import Call, Grammar, GrammarClass, Rule, epsilon_free, terminal_table
from engine.search import generate
from models.errors import PreconditionError
from models.schemas import Bounds, LanguageSample
from storage.builtins import TrivialStorage
from utils.logger import get_logger

logger = get_logger(__name__)

Homomorphism = Mapping[str, Sequence[str]]


@dataclass(frozen=True)
class ReWitness:
    grammar: Grammar
    ranks: Tuple[Tuple[str, int], ...]
    letters: Tuple[Tuple[str, str], ...]

    @property
    def rank_of(self) -> Dict[str, int]:
        return dict(self.ranks)

    def spec(self, size_bound: int) -> DeltaSpec:
        return DeltaSpec.of_grammar(self.rank_of, self.grammar, size_bound)


def _require_linear(g: Grammar, side: str) -> None:
    if not isinstance(g.storage, TrivialStorage):
        raise PreconditionError(f"{side} must be a grammar over s0", grammar=str(g), construction="re-witness")
    if g.grammar_class not in (GrammarClass.CF, GrammarClass.REG):
        raise PreconditionError(f"{side} must be a CF grammar", grammar=str(g), construction="re-witness")
    for index, rule in enumerate(g.rules):
        if len(rule.calls) > 1:
            raise PreconditionError(
                f"{side} is not linear", grammar=str(g), rule_index=index, construction="re-witness"
            )


def _copy(g: Grammar, prefix: str, letters: Mapping[str, str], names: FreshNames) -> Tuple[str, List[Rule], List[str]]:
    """The rules of g over fresh nonterminals, each letter a read as (a, 2)."""
    renamed = {}
    for nonterminal in g.nonterminals:
        candidate = f"{prefix}_{nonterminal}"
        renamed[nonterminal] = names.fresh(candidate) if candidate in names else candidate
        names.reserve(renamed[nonterminal])
    rules = []
    for rule in g.rules:
        rhs = []
        for item in rule.rhs:
            if isinstance(item, Call):
                rhs.append(Call(renamed[item.nonterminal], item.chain))
            elif item != EPSILON:
                rhs.append(path_symbol(letters[item], 2))
        rules.append(Rule(renamed[rule.lhs], rule.test, tuple(rhs)))
    return renamed[g.initial], rules, list(renamed.values())


def re_witness(left: Grammar, right: Grammar, h: Homomorphism) -> ReWitness:
    """K = L₂ ($,1) ε ∪ M₂ ($,2) ε ∪ Σ₂* {F_a | a ∈ Σ} over the alphabet Δ below.

    Δ0 = Ω ∪ {ε}, Δ1 = {#1}, Δ2 = Σ ∪ {$, #2}, Δk = {#k} for 3 ≤ k ≤ max |h(a)|.
    A letter of Σ that is also in Ω gets a fresh name in Δ.
    """
    _require_linear(left, "L")
    _require_linear(right, "M")
    sigma = list(dict.fromkeys(epsilon_free(left.terminal_names + right.terminal_names)))
    missing = [a for a in sigma if a not in h]
    if missing:
        raise PreconditionError(f"homomorphism undefined on {missing}", construction="re-witness")
    images = {a: tuple(epsilon_free(h[a])) for a in sigma}
    omega = list(dict.fromkeys(b for a in sigma for b in images[a]))
    width = max([2] + [len(image) for image in images.values()])

    names = FreshNames(omega + [EPSILON])

    def claim(candidate: str) -> str:
        name = names.fresh(candidate) if candidate in names else candidate
        names.reserve(name)
        return name

    ranks: Dict[str, int] = {b: 0 for b in omega}
    ranks[EPSILON] = 0
    hashes = {k: claim(f"#{k}") for k in range(1, width + 1)}
    for k, name in hashes.items():
        ranks[name] = k
    dollar = claim("$")
    ranks[dollar] = 2
    letters = {a: claim(a) for a in sigma}
    ranks.update({name: 2 for name in letters.values()})

    left_start, left_rules, left_nonterminals = _copy(left, "L", letters, names)
    right_start, right_rules, right_nonterminals = _copy(right, "M", letters, names)
    initial = claim("K")
    spine = claim("R")
    identity = (TrivialStorage().identity(),)
    rules: List[Rule] = [
        Rule(initial, rhs=(Call(left_start, identity), path_symbol(dollar, 1), EPSILON)),
        Rule(initial, rhs=(Call(right_start, identity), path_symbol(dollar, 2), EPSILON)),
        Rule(initial, rhs=(Call(spine, identity),)),
    ]
    rules += left_rules + right_rules
    for a in sigma:
        rules.append(Rule(spine, rhs=(path_symbol(letters[a], 2), Call(spine, identity))))
        image = images[a]
        if image:
            hash_k = hashes[len(image)]
            for i, b in enumerate(image, start=1):
                rules.append(Rule(spine, rhs=(path_symbol(letters[a], 1), path_symbol(hash_k, i), b)))
        else:
            rules.append(Rule(spine, rhs=(path_symbol(letters[a], 1), path_symbol(hashes[1], 1), EPSILON)))

    terminals = sorted({item for rule in rules for item in rule.terminals})
    k = Grammar(
        storage=TrivialStorage(),
        nonterminals=(initial, spine) + tuple(left_nonterminals) + tuple(right_nonterminals),
        terminals=terminal_table(terminals),
        initial=initial,
        encoding=left.encoding,
        rules=tuple(rules),
        grammar_class=GrammarClass.CF,
        name=derived_name(left, "re-witness"),
    )
    logger.debug(f"{k}: {len(rules)} rules, alphabet of {len(ranks)} symbols")
    return ReWitness(
        grammar=k,
        ranks=tuple(sorted(ranks.items())),
        letters=tuple(sorted(letters.items())),
    )


def image_of_intersection(left: Grammar, right: Grammar, h: Homomorphism, bounds: Bounds) -> LanguageSample:
    """h(L ∩ M) over the words of L and M up to ``max_len``, by generating both."""
    ours = generate(left, bounds)
    theirs = generate(right, bounds)
    common = ours.items & theirs.items
    image = frozenset(tuple(b for a in word for b in epsilon_free(h[a])) for word in common)
    sample = LanguageSample(
        items=image,
        bounds=bounds,
        complete_up_to=0,
        measure="length",
    )
    sample.notes.append(f"images of common words of length at most {min(ours.complete_up_to, theirs.complete_up_to)}")
    return sample


def homomorphism_from_pairs(pairs: Iterable[Tuple[str, Sequence[str]]]) -> Dict[str, Tuple[str, ...]]:
    table: Dict[str, Tuple[str, ...]] = {}
    for letter, image in pairs:
        if letter in table:
            raise PreconditionError(f"homomorphism given twice on '{letter}'", construction="re-witness")
        table[letter] = tuple(image)
    return table
