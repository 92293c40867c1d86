import pytest

from constructions.lookahead import determinize_pf, determinize_via_lookahead
from engine.search import transduce
from grammar.determinism import is_deterministic
from models.errors import PreconditionError
from models.schemas import Bounds
from storage.configurations import Int
from utils.parsers import parse_grammar, parse_tree

BOUNDS = Bounds(max_len=6, max_steps=40)

# two rules for A; on each input at most one of them finishes
CHOICE = """
storage countdown;
nonterminals A, B, C, D;
terminals a, b;
initial A;
encoding en;
rules:
A -> B(dec);
A -> C(dec);
B -> if null then a;
C -> if not null then b D(dec);
D -> if null then ;
"""


def test_tree_choice_becomes_deterministic(corpus):
    g = corpus("tree_choice")
    assert is_deterministic(g).is_yes
    det = determinize_via_lookahead(g)
    assert is_deterministic(det).is_yes
    assert transduce(det, parse_tree("sigma(a, a)"), BOUNDS).items == frozenset({("a",)})
    assert transduce(det, parse_tree("sigma(b, b)"), BOUNDS).items == frozenset({("b",)})
    assert not transduce(det, parse_tree("sigma(a, b)"), BOUNDS).items


def test_lookahead_needs_a_deterministic_automaton(corpus):
    with pytest.raises(PreconditionError):
        determinize_via_lookahead(corpus("example2_dpda"))


def test_determinize_pf():
    g = parse_grammar(CHOICE)
    assert not is_deterministic(g).is_yes
    det = determinize_pf(g)
    assert is_deterministic(det).is_yes
    assert transduce(det, Int(1), BOUNDS).items == frozenset({("a",)})
    assert transduce(det, Int(2), BOUNDS).items == frozenset({("b",)})
    assert not transduce(det, Int(0), BOUNDS).items
    assert not transduce(det, Int(3), BOUNDS).items


def test_determinize_pf_needs_noetherian_storage(corpus):
    with pytest.raises(PreconditionError):
        determinize_pf(corpus("g2"))
