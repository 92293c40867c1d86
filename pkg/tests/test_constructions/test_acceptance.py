import pytest

from constructions.acceptance import (
    RegConversion,
    RtConversion,
    convert_acceptance_reg,
    convert_acceptance_rt,
    final_state_sample,
    mark_grammar,
    mark_language,
    mark_tree,
    unmark_language,
    unmark_tree,
)
from engine.acceptance import final_state_language
from engine.search import generate, generate_trees
from grammar.model import GrammarClass
from models.errors import PreconditionError
from models.schemas import Bounds
from utils.parsers import parse_grammar, parse_tree

BOUNDS = Bounds(max_len=12, max_steps=60)

EMPTY_STORE_ANBN = """
storage pushdown;
nonterminals A, B;
terminals a, b;
initial A;
encoding #;
rules:
A -> a A(push(a));
A -> b B(pop);
B -> if top=a then b B(pop);
B -> if top=# then ;
"""

EVEN_AS = """
storage s0;
nonterminals E, O;
terminals a;
initial E;
encoding en;
rules:
E -> a O;
O -> a E;
"""


def test_empty_store_to_final_state():
    g = parse_grammar(EMPTY_STORE_ANBN)
    converted = convert_acceptance_reg(g, RegConversion.DE_TO_DF)
    assert len(converted.finals) == 1
    language = final_state_sample(converted.grammar, converted.finals, BOUNDS).items
    assert language == generate(g, BOUNDS).items


def test_final_state_to_reg_of_example1(corpus):
    dfa = corpus("example1_dfa")
    converted = convert_acceptance_reg(dfa, RegConversion.DF_TO_REG, ["F"])
    assert not converted.finals
    sample = generate(converted.grammar, Bounds(max_len=5, max_steps=20))
    assert ("c.2", "c.2", "eps") in sample.items
    assert final_state_language(dfa, frozenset({"F"}), sample.items) == sample.items


def test_final_state_of_a_cyclic_acceptor():
    g = parse_grammar(EVEN_AS)
    converted = convert_acceptance_reg(g, RegConversion.DF_TO_REG, ["E"])
    assert generate(converted.grammar, Bounds(max_len=6, max_steps=20)).items == frozenset(
        ("a",) * n for n in (0, 2, 4, 6)
    )


def test_prefix_free_final_state_to_empty_store(corpus):
    dpda = corpus("example2_dpda")
    converted = convert_acceptance_reg(dpda, RegConversion.DF_PREFIX_FREE_TO_DE, ["F"], Bounds(max_len=8, max_steps=40))
    assert not converted.finals
    assert converted.notes
    bounds = Bounds(max_len=8, max_steps=40)
    assert generate(converted.grammar, bounds).items == final_state_sample(dpda, ["F"], bounds).items


def test_prefix_free_conversion_refuses_prefixes():
    with pytest.raises(PreconditionError):
        convert_acceptance_reg(parse_grammar(EVEN_AS), RegConversion.DF_PREFIX_FREE_TO_DE, ["E"], BOUNDS)


def test_conversions_need_finals(corpus):
    with pytest.raises(PreconditionError):
        convert_acceptance_reg(corpus("example1_dfa"), RegConversion.DF_TO_REG)
    with pytest.raises(PreconditionError):
        convert_acceptance_reg(corpus("example1_dfa"), RegConversion.DF_TO_REG, ["Nope"])


def test_mark_and_unmark_trees():
    t = parse_tree("c(a, eps, b)")
    marked = mark_tree(t)
    assert marked == parse_tree("c(a(#), eps(#), b(#))")
    assert unmark_tree(marked) == t
    with pytest.raises(PreconditionError):
        unmark_tree(t)
    with pytest.raises(PreconditionError):
        unmark_tree(marked, ["a", "b"])


def test_mark_grammar(corpus):
    trees = corpus("example1_trees")
    bounds = Bounds(max_len=13, max_steps=60)
    sample = generate_trees(trees, bounds)
    marked = generate_trees(mark_grammar(trees), Bounds(max_len=22, max_steps=60))
    assert marked.items == mark_language(sample).items
    assert unmark_language(marked).items == sample.items


def test_rt_round_trip_through_marking(corpus):
    trees = corpus("example1_trees")
    marked = convert_acceptance_rt(trees, RtConversion.DE_TO_DF)
    assert marked.grammar_class == GrammarClass.RT
    bounds = Bounds(max_len=13, max_steps=60)
    wide = Bounds(max_len=22, max_steps=60)
    assert unmark_language(generate_trees(marked, wide)).items == generate_trees(trees, bounds).items

    back = convert_acceptance_rt(marked, RtConversion.DF_TO_RT, ["a", "b", "eps"])
    assert generate_trees(back, bounds).items == generate_trees(trees, bounds).items


def test_marked_to_lookahead(corpus):
    trees = corpus("example1_trees")
    marked = convert_acceptance_rt(trees, RtConversion.DE_TO_DF)
    lookahead = convert_acceptance_rt(marked, RtConversion.DF_TO_DE_LA, ["a", "b", "eps"])
    bounds = Bounds(max_len=13, max_steps=60)
    assert generate_trees(lookahead, bounds).items == generate_trees(trees, bounds).items


def test_rt_conversion_needs_leaves(corpus):
    marked = convert_acceptance_rt(corpus("example1_trees"), RtConversion.DE_TO_DF)
    with pytest.raises(PreconditionError):
        convert_acceptance_rt(marked, RtConversion.DF_TO_RT)
    with pytest.raises(PreconditionError):
        convert_acceptance_rt(marked, RtConversion.DF_TO_RT, ["c"])
