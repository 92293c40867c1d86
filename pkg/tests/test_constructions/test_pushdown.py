import pytest

from constructions.pushdown import collapse_ext, to_grammar, to_pushdown_automaton
from engine.search import generate, is_functional, transduce
from grammar.determinism import is_deterministic
from grammar.model import GrammarClass
from grammar.normal_forms import normalize_cfext
from models.errors import PreconditionError
from models.schemas import Bounds
from storage.combinators import PushdownOf
from storage.configurations import Int

AUTOMATON_BOUNDS = Bounds(max_len=15, max_steps=200, max_input=4)
GRAMMAR_BOUNDS = Bounds(max_len=12, max_steps=200, max_input=4)


def _lifted(corpus, name):
    return normalize_cfext(corpus(name))


@pytest.mark.slow
@pytest.mark.parametrize("name", ["g1", "g2", "g3", "g4"])
def test_automaton_round_trip(corpus, name):
    g = corpus(name)
    automaton = to_pushdown_automaton(normalize_cfext(g))
    assert automaton.grammar_class == GrammarClass.REG
    assert isinstance(automaton.storage, PushdownOf)
    assert generate(automaton, AUTOMATON_BOUNDS).items == generate(g, AUTOMATON_BOUNDS).items

    back = to_grammar(automaton)
    assert back.grammar_class == GrammarClass.CF_EXT
    assert generate(back, GRAMMAR_BOUNDS).items == generate(g, GRAMMAR_BOUNDS).items


def test_automaton_of_g1_is_deterministic(corpus):
    automaton = to_pushdown_automaton(_lifted(corpus, "g1"))
    assert is_deterministic(automaton).is_yes


def test_automaton_keeps_the_transduction(corpus):
    automaton = to_pushdown_automaton(_lifted(corpus, "g1"))
    bounds = Bounds(max_len=16, max_steps=200)
    for n in range(5):
        assert transduce(automaton, Int(n), bounds).items == frozenset({("a",) * 2 ** n})


def test_automaton_needs_normal_form(corpus):
    with pytest.raises(PreconditionError):
        to_pushdown_automaton(corpus("g2"))


def test_to_grammar_needs_a_pushdown_automaton(corpus):
    with pytest.raises(PreconditionError):
        to_grammar(corpus("g2"))


def test_unpruned_triples_generate_the_same_language(corpus):
    automaton = to_pushdown_automaton(_lifted(corpus, "anbn"))
    pruned = to_grammar(automaton)
    full = to_grammar(automaton, prune=False)
    assert len(full.rules) >= len(pruned.rules)
    bounds = Bounds(max_len=8, max_steps=120)
    assert generate(full, bounds).items == generate(pruned, bounds).items == generate(corpus("anbn"), bounds).items


def test_collapse_ext_of_g1(corpus):
    lifted = _lifted(corpus, "g1")
    collapsed = collapse_ext(lifted)
    assert collapsed.grammar_class == GrammarClass.CF
    bounds = Bounds(max_len=16, max_steps=120, max_input=4)
    assert is_functional(collapsed, bounds).functional
    for n in range(5):
        assert transduce(collapsed, Int(n), bounds).items == transduce(corpus("g1"), Int(n), bounds).items
