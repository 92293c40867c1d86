import pytest

from constructions.acceptance import mark_grammar, marked_alphabet, unmark_language
from constructions.trees import derivation_tree_acceptor, path_acceptor, tree_acceptor_from_paths, yield_grammar
from delta.operations import DeltaSpec, tree_delta
from engine.search import generate, generate_trees
from grammar.determinism import is_racceptor_deterministic
from grammar.model import GrammarClass
from grammar.normal_forms import normalize_rt
from models.errors import PreconditionError
from models.schemas import Bounds
from models.tree import tree_yield

EXAMPLE1 = {"c": 3, "a": 0, "b": 0, "eps": 0}
EXAMPLE2 = {"c": 1, "b": 2, "a": 0}


@pytest.mark.slow
def test_derivation_trees_yield_the_language(corpus):
    g2 = corpus("g2")
    acceptor = derivation_tree_acceptor(g2)
    assert acceptor.grammar_class == GrammarClass.RT
    trees = generate_trees(acceptor, Bounds(max_len=30, max_steps=120))
    yields = {tree_yield(t) for t in trees.items}
    expected = generate(g2, Bounds(max_len=12, max_steps=80)).items
    assert {w for w in yields if len(w) <= 12} == expected


def test_derivation_tree_acceptor_is_deterministic(corpus):
    acceptor = derivation_tree_acceptor(corpus("anbn"))
    assert is_racceptor_deterministic(normalize_rt(acceptor))


def test_yield_grammar(corpus):
    g = yield_grammar(corpus("g2_tree"))
    assert g.grammar_class == GrammarClass.CF
    assert generate(g, Bounds(max_len=9, max_steps=20)).items == frozenset({("tau", "tau")})


def test_yield_grammar_of_derivation_trees(corpus):
    bounds = Bounds(max_len=10, max_steps=60)
    back = yield_grammar(derivation_tree_acceptor(corpus("anbn")))
    assert generate(back, bounds).items == generate(corpus("anbn"), bounds).items


def test_yield_grammar_needs_trees(corpus):
    with pytest.raises(PreconditionError):
        yield_grammar(corpus("g2"))


@pytest.mark.slow
def test_tree_acceptor_from_paths_matches_tree_delta(corpus):
    dfa = corpus("example1_dfa")
    acceptor = tree_acceptor_from_paths(dfa, ["F"], EXAMPLE1)
    assert acceptor.grammar_class == GrammarClass.RT
    marked = generate_trees(acceptor, Bounds(max_len=22, max_steps=120))
    unmarked = unmark_language(marked, ["a", "b", "eps"]).items
    expected = tree_delta(DeltaSpec.of_grammar(EXAMPLE1, dfa, 13, finals=["F"])).items
    assert unmarked == expected
    assert len(expected) == 4


@pytest.mark.slow
def test_tree_acceptor_from_pushdown_paths_matches_tree_delta(corpus):
    dpda = corpus("example2_dpda")
    acceptor = tree_acceptor_from_paths(dpda, ["F"], EXAMPLE2)
    # marking adds one node per leaf: 18 + 8
    marked = generate_trees(acceptor, Bounds(max_len=26, max_steps=200))
    unmarked = unmark_language(marked, ["a"]).items
    expected = tree_delta(DeltaSpec.of_grammar(EXAMPLE2, dpda, 18, finals=["F"])).items
    assert unmarked == expected
    assert sorted(len(tree_yield(t)) for t in expected) == [1, 2, 4, 8]


def test_tree_acceptor_needs_known_finals(corpus):
    with pytest.raises(PreconditionError):
        tree_acceptor_from_paths(corpus("example1_dfa"), ["Z"], EXAMPLE1)


def test_path_acceptor_recovers_the_tree_language(corpus):
    trees = corpus("example1_trees")
    acceptor = path_acceptor(mark_grammar(trees), ["a", "b", "eps"])
    assert acceptor.grammar_class == GrammarClass.REG
    recovered = tree_delta(DeltaSpec.of_grammar(EXAMPLE1, acceptor, 13)).items
    assert recovered == generate_trees(trees, Bounds(max_len=13, max_steps=60)).items


def test_path_acceptor_needs_a_marked_alphabet(corpus):
    with pytest.raises(PreconditionError):
        path_acceptor(corpus("example1_trees"), ["a", "b", "eps"])


def test_marked_alphabet():
    assert marked_alphabet(EXAMPLE1) == {"c": 3, "a": 1, "b": 1, "eps": 1, "#": 0}
    with pytest.raises(PreconditionError):
        marked_alphabet({"#": 0})
