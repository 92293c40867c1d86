from grammar.desugar import desugar
from grammar.determinism import is_deterministic, is_racceptor_deterministic
from grammar.model import GrammarClass
from grammar.validate import validate
from models.responses import Verdict
from utils.parsers import parse_grammar

RACCEPTOR_G2 = """
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


def test_g2_is_cf_not_reg(corpus):
    report = validate(corpus("g2"))
    assert report.consistent
    assert report.strongest == "CF"
    assert "REG" not in report.classes


def test_dropping_c_gives_reg(corpus):
    assert validate(corpus("anbn_pushdown")).strongest == "REG"


def test_tree_g1_is_rt_in_normal_form(corpus):
    report = validate(corpus("g1_tree"))
    assert report.strongest == "RT"
    assert report.normal_form


def test_desugaring_never_weakens_the_class(corpus):
    order = ["REG", "CF_ext", "CF"]
    for name in ("g1", "g2", "g3", "g4", "g7", "anbn"):
        g = corpus(name)
        before = validate(g).strongest
        after = validate(desugar(g)).strongest
        assert order.index(after) <= order.index(before)


def test_determinism_verdicts(corpus):
    assert is_deterministic(corpus("g1")).verdict == Verdict.YES
    assert is_deterministic(corpus("g6")).verdict == Verdict.YES
    assert is_deterministic(corpus("g5")).verdict == Verdict.YES
    g2 = is_deterministic(corpus("g2"))
    assert g2.verdict == Verdict.NO
    assert g2.rules == [1, 2]
    assert g2.witness is not None


def test_racceptor_but_not_transducer_deterministic():
    g = parse_grammar(RACCEPTOR_G2)
    assert g.grammar_class == GrammarClass.REG
    assert is_racceptor_deterministic(g)
    assert is_deterministic(g).verdict == Verdict.NO


def test_same_symbol_same_test_is_not_racceptor_deterministic():
    g = parse_grammar(
        """
        storage s0;
        nonterminals A, B, C;
        terminals a;
        initial A;
        encoding en;
        rules:
        A -> a B;
        A -> a C;
        B -> ;
        C -> ;
        """
    )
    assert not is_racceptor_deterministic(g)


def test_validate_reports_racceptor_flags(corpus):
    report = validate(corpus("example1_dfa"))
    assert report.strongest == "REG"
    assert report.racceptor_deterministic is True
