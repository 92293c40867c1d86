import pytest

from engine.search import generate, generate_trees, transduce
from grammar.desugar import desugar
from grammar.determinism import is_deterministic
from grammar.model import Grammar, GrammarClass, Rule
from grammar.normal_forms import (
    cfp_test_normal_form,
    is_cfext_normal,
    is_reg_normal,
    is_rt_normal,
    normalize_cfext,
    normalize_reg,
    normalize_rt,
)
from models.errors import PreconditionError
from models.schemas import Bounds
from storage.configurations import Int
from storage.expressions import atoms
from utils.parsers import parse_grammar

BOUNDS = Bounds(max_len=12, max_steps=120, max_input=4)


def _rule_multiset(g: Grammar):
    return sorted(str(rule) for rule in g.rules)


def test_desugar_expands_g7_chain(corpus):
    g7 = corpus("g7")
    expanded = desugar(g7)
    assert len(expanded.nonterminals) == len(g7.nonterminals) + 1
    assert all(len(call.chain) == 1 for rule in expanded.rules for call in rule.calls)
    assert generate(expanded, BOUNDS).items == generate(g7, BOUNDS).items


def test_false_rules_are_dropped():
    g = parse_grammar(
        """
        storage countdown;
        nonterminals A;
        terminals a;
        initial A;
        encoding en;
        rules:
        A -> if false then a;
        A -> if null or false then a;
        """
    )
    assert [str(rule) for rule in desugar(g).rules] == ["A → if null then a"]


@pytest.mark.parametrize("name", ["g2", "g3", "g4", "anbn"])
def test_desugar_preserves_the_language(corpus, name):
    g = corpus(name)
    assert generate(desugar(g), BOUNDS).items == generate(g, BOUNDS).items


def test_normalize_reg_splits_terminal_prefixes():
    g = parse_grammar(
        """
        storage pushdown;
        nonterminals A, B;
        terminals a, b, c;
        initial A;
        encoding #;
        rules:
        A -> if top=# then a b c B(push(a));
        B -> ;
        """
    )
    normal = normalize_reg(g)
    assert is_reg_normal(normal)
    assert len(normal.rules) == 4
    assert len(normal.nonterminals) == 4
    assert generate(normal, BOUNDS).items == generate(g, BOUNDS).items
    assert _rule_multiset(normalize_reg(normal)) == _rule_multiset(normal)


def test_normalize_reg_on_a_reg_pushdown_grammar(corpus):
    g = corpus("anbn_pushdown")
    normal = normalize_reg(g)
    assert is_reg_normal(normal)
    assert generate(normal, BOUNDS).items == generate(g, BOUNDS).items


def test_normalize_reg_needs_an_identity():
    g = parse_grammar(
        """
        storage countdown;
        class REG;
        nonterminals A;
        terminals a;
        initial A;
        encoding en;
        rules:
        A -> if null then a a;
        """
    )
    with pytest.raises(PreconditionError):
        normalize_reg(g)


def test_normalize_rt(corpus):
    g2_tree = corpus("g2_tree")
    assert is_rt_normal(g2_tree)
    deep = corpus("example1_trees")
    assert not is_rt_normal(deep)
    normal = normalize_rt(deep)
    assert is_rt_normal(normal)
    bounds = Bounds(max_len=10, max_steps=60)
    assert generate_trees(normal, bounds).items == generate_trees(deep, bounds).items
    assert _rule_multiset(normalize_rt(normal)) == _rule_multiset(normal)


def test_normalize_cfext_on_g1(corpus):
    g1 = corpus("g1")
    normal = normalize_cfext(g1)
    assert normal.grammar_class == GrammarClass.CF_EXT
    assert is_cfext_normal(normal)
    bounds = Bounds(max_len=16, max_steps=200)
    for n in range(5):
        assert transduce(normal, Int(n), bounds).items == transduce(g1, Int(n), bounds).items
    assert is_deterministic(g1).is_yes and is_deterministic(normal).is_yes


def test_terminal_only_rules_survive_cfext_normalization(corpus):
    normal = normalize_cfext(corpus("g1"))
    assert Rule("A", corpus("g1").rules[0].test, ("a",)) in normal.rules


def test_top_test_normal_form(corpus):
    g2 = corpus("g2")
    normal = cfp_test_normal_form(g2)
    for rule in normal.rules:
        assert any(op.name == "top=" for op in atoms(rule.test))
        assert all(op.name != "bottom" for op in atoms(rule.test))
    bounds = Bounds(max_len=15, max_steps=120)
    assert generate(normal, bounds).items == generate(g2, bounds).items


def test_top_test_normal_form_drops_contradictions():
    g = parse_grammar(
        """
        storage pushdown;
        nonterminals A;
        terminals a;
        initial A;
        encoding #;
        rules:
        A -> if top=a and top=# then a;
        A -> if not top=a and not top=# then a;
        A -> if top=# then ;
        """
    )
    normal = cfp_test_normal_form(g)
    assert all(rule.rhs == () for rule in normal.rules)
