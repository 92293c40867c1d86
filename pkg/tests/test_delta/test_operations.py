from itertools import product

import pytest
from hypothesis import given, settings as hypothesis_settings
from hypothesis import strategies as st

from delta.operations import DeltaSpec, continuity_check, delta, naive_tree_delta, tree_delta
from models.errors import UncertifiedSampleError, ValidationError
from models.tree import tree_yield
from utils.parsers import parse_grammar, parse_tree

EXAMPLE1 = {"c": 3, "a": 0, "b": 0, "eps": 0}
EXAMPLE2 = {"c": 1, "b": 2, "a": 0}
EXAMPLE3 = {"f": 2, "d": 2, "b": 2, "c": 1, "p": 0, "q": 0, "r": 0, "s": 0, "a": 0}
# leaves of the first delta read as paths over EXAMPLE2
AS_EXAMPLE2_PATHS = {"p": "c.1", "q": "b.1", "r": "b.2", "s": "a"}
SMALL = {"s": 2, "a": 0, "b": 0}

LEFT_COMB = """
storage s0;
nonterminals A;
terminals s.1, s.2, a, b;
initial A;
encoding en;
rules:
A -> s.1 A;
A -> s.2 b;
A -> a;
"""


def _first_level(n: int):
    """p^(2^n) w s for every w in {q, r}^(2^n)."""
    width = 2 ** n
    return {("p",) * width + w + ("s",) for w in product("qr", repeat=width)}


def test_regular_paths_give_anbn(corpus):
    spec = DeltaSpec.of_grammar(EXAMPLE1, corpus("example1_dfa"), 25, finals=["F"])
    assert delta(spec).items == frozenset(("a",) * n + ("b",) * n for n in range(1, 9))


@pytest.mark.slow
def test_deterministic_pushdown_paths_give_powers_of_two(corpus):
    spec = DeltaSpec.of_grammar(EXAMPLE2, corpus("example2_dpda"), 35, finals=["F"])
    assert delta(spec).items == frozenset(("a",) * 2 ** n for n in range(5))


def test_example3_paths_give_doubled_words(corpus):
    spec = DeltaSpec.of_grammar(EXAMPLE3, corpus("example3_pda"), 10)
    assert delta(spec).items == frozenset(_first_level(0) | _first_level(1))


@pytest.mark.slow
def test_delta_applied_twice_gives_a_double_exponent(corpus):
    first = delta(DeltaSpec.of_grammar(EXAMPLE3, corpus("example3_pda"), 19)).items
    assert first == frozenset(_first_level(0) | _first_level(1) | _first_level(2))
    renamed = [tuple(AS_EXAMPLE2_PATHS[leaf] for leaf in word) for word in first]
    second = delta(DeltaSpec.of_paths(EXAMPLE2, renamed, 35)).items
    assert second == frozenset(("a",) * 2 ** (2 ** n) for n in range(3))
    assert sorted(len(word) for word in second) == [2, 4, 16]


def test_tree_delta_of_example1(corpus):
    spec = DeltaSpec.of_grammar(EXAMPLE1, corpus("example1_dfa"), 7, finals=["F"])
    assert tree_delta(spec).items == frozenset(
        {parse_tree("c(a, eps, b)"), parse_tree("c(a, c(a, eps, b), b)")}
    )


def test_delta_of_a_finite_path_set():
    spec = DeltaSpec.of_paths(SMALL, [("s.1", "a"), ("s.2", "b"), ("s.2", "s.1", "a"), ("s.2", "s.2", "b")], 5)
    assert tree_delta(spec).items == frozenset(
        {parse_tree("s(a, b)"), parse_tree("s(a, s(a, b))")}
    )
    assert delta(spec).items == frozenset({("a", "b"), ("a", "a", "b")})


def test_leaf_paths_alone():
    spec = DeltaSpec.of_paths(SMALL, [("a",)], 3)
    assert tree_delta(spec).items == frozenset({parse_tree("a")})


def test_empty_language_gives_nothing():
    spec = DeltaSpec.of_paths(SMALL, [], 5)
    assert not tree_delta(spec).items


paths_over_small = st.lists(
    st.tuples(
        st.lists(st.sampled_from(["s.1", "s.2"]), max_size=3),
        st.sampled_from(["a", "b"]),
    ).map(lambda parts: tuple(parts[0]) + (parts[1],)),
    max_size=8,
)


@hypothesis_settings(max_examples=200, deadline=None)
@given(paths_over_small)
def test_pruned_search_agrees_with_enumeration(language):
    spec = DeltaSpec.of_paths(SMALL, language, 7)
    assert tree_delta(spec).items == naive_tree_delta(spec).items


def test_pruned_search_agrees_with_enumeration_on_a_grammar(corpus):
    spec = DeltaSpec.of_grammar(EXAMPLE1, corpus("example1_dfa"), 7, finals=["F"])
    assert tree_delta(spec).items == naive_tree_delta(spec).items


def _no_recognizer(self):
    raise AssertionError("enumeration must not read paths with the pruning recognizer")


def test_enumeration_generates_the_path_words(monkeypatch):
    spec = DeltaSpec.of_grammar(SMALL, parse_grammar(LEFT_COMB), 7)
    expected = tree_delta(spec).items
    assert parse_tree("s(s(a, b), b)") in expected
    monkeypatch.setattr(DeltaSpec, "recognizer", _no_recognizer)
    assert naive_tree_delta(spec).items == expected


def test_enumeration_generates_final_state_paths(corpus, monkeypatch):
    spec = DeltaSpec.of_grammar(EXAMPLE2, corpus("example2_dpda"), 9, finals=["F"])
    expected = tree_delta(spec).items
    assert {len(tree_yield(t)) for t in expected} == {1, 2, 4}
    monkeypatch.setattr(DeltaSpec, "recognizer", _no_recognizer)
    assert naive_tree_delta(spec).items == expected


def test_continuity(corpus):
    spec = DeltaSpec.of_grammar(EXAMPLE1, corpus("example1_dfa"), 13, finals=["F"])
    report = continuity_check(spec)
    assert report.holds
    assert report.items_checked == 4
    assert not report.missing


def test_spec_errors(corpus):
    with pytest.raises(ValidationError):
        DeltaSpec.of_paths(SMALL, [("a",)], 0)
    with pytest.raises(ValidationError):
        DeltaSpec.of_paths(SMALL, [("s.3", "a")], 4)
    with pytest.raises(ValidationError):
        DeltaSpec.of_grammar(SMALL, corpus("example1_dfa"), 4)
    with pytest.raises(ValidationError):
        DeltaSpec(DeltaSpec.of_paths(SMALL, [], 3).alphabet, 3)


def test_inputs_beyond_a_single_element_are_refused(corpus):
    spec = DeltaSpec.of_grammar({"a": 0}, corpus("g1"), 4)
    with pytest.raises(UncertifiedSampleError):
        tree_delta(spec)
