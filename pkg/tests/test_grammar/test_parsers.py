import pytest

from grammar.model import Call, GrammarClass
from grammar.printer import format_grammar
from models.errors import GrammarSyntaxError, ValidationError
from models.tree import Tree
from storage.combinators import Product, PushdownOf
from storage.configurations import Int, Pair, Str
from storage.symbols import Op
from utils.config_loader import get_corpus_dir
from utils.parsers import (
    parse_alphabet,
    parse_grammar,
    parse_input,
    parse_path_file,
    parse_storage,
    parse_tree,
    parse_word,
)

CORPUS = sorted(path.stem for path in get_corpus_dir().glob("*.gws"))

HEADER = """
storage pushdown;
nonterminals A, B;
terminals a, b;
initial A;
encoding #;
rules:
"""


def test_g2_has_seven_rules(corpus):
    g2 = corpus("g2")
    assert len(g2.rules) == 7
    assert g2.grammar_class == GrammarClass.CF
    assert g2.name == "g2"


def test_empty_body_is_lambda():
    g = parse_grammar(HEADER + "A -> if top=# then ;\n")
    assert g.rules[0].rhs == ()


def test_bare_call_uses_the_identity():
    g = parse_grammar(HEADER + "A -> a B;\nB -> ;\n")
    assert g.rules[0].rhs == ("a", Call("B", (Op("stay"),)))


def test_else_branch_becomes_a_negated_rule(corpus):
    g1 = corpus("g1")
    assert len(g1.rules) == 2
    assert g1.rules[1].rhs == (Call("A", (Op("dec"),)), Call("A", (Op("dec"),)))


def test_chains_are_kept_inside_calls(corpus):
    g7 = corpus("g7")
    chains = [call.chain for rule in g7.rules for call in rule.calls]
    assert (Op("push", (Op("#"), Op("dec"))),) * 2 in chains


def test_class_is_inferred(corpus):
    assert corpus("anbn_pushdown").grammar_class == GrammarClass.REG
    assert corpus("g1_tree").grammar_class == GrammarClass.RT
    assert corpus("g5").grammar_class == GrammarClass.CF


def test_undeclared_predicate_is_rejected():
    with pytest.raises(ValidationError):
        parse_grammar(HEADER + "A -> if first=a then a;\n")


def test_undeclared_symbol_is_rejected():
    with pytest.raises(ValidationError):
        parse_grammar(HEADER + "A -> c;\n")


def test_syntax_error_reports_position():
    with pytest.raises(GrammarSyntaxError) as error:
        parse_grammar(HEADER + "A -> if then a;\n")
    assert error.value.line == 8


def test_declared_class_must_fit():
    text = HEADER.replace("storage pushdown;", "storage pushdown;\nclass REG;")
    with pytest.raises(ValidationError):
        parse_grammar(text + "A -> B(stay) B(stay);\nB -> ;\n")


def test_storage_expressions():
    assert isinstance(parse_storage("product(oneway+id, pushdown)"), Product)
    assert parse_storage("pd^2").expr == "pd(pd(s0))"
    assert isinstance(parse_storage("pd(countdown)"), PushdownOf)


def test_inputs_by_encoding(corpus):
    g1, g4, g5, g6 = corpus("g1"), corpus("g4"), corpus("g5"), corpus("g6")
    assert parse_input("3", g1.storage, g1.encoding) == Int(3)
    assert parse_input("abba", g4.storage, g4.encoding) == Str(tuple("abba"))
    assert parse_input("sigma(a, tau(b, c))", g5.storage, g5.encoding) == parse_tree("sigma(a, tau(b, c))")
    assert parse_input("aabbcc", g6.storage, g6.encoding) == Str(tuple("aabbcc"))
    with pytest.raises(ValidationError):
        parse_input("x", g1.storage, g1.encoding)


def test_pair_inputs():
    g = parse_grammar(
        """
        storage product(oneway, countdown);
        nonterminals A;
        terminals a;
        initial A;
        encoding ({a, b}, en);
        rules:
        A -> if null then ;
        A -> if not null and first=a then a A(read, dec);
        """
    )
    assert parse_input("ab | 2", g.storage, g.encoding) == Pair(Str(("a", "b")), Int(2))


def test_small_parsers():
    assert parse_tree("sigma(a, b)") == Tree("sigma", (Tree("a"), Tree("b")))
    assert parse_alphabet("alphabet c:3, a:0, eps:0;") == {"c": 3, "a": 0, "eps": 0}
    assert parse_word("a b c.2") == ("a", "b", "c.2")
    assert parse_word("abc") == ("a", "b", "c")
    assert parse_word("λ") == ()
    assert parse_path_file("# paths\nc.2 c.1 a\nλ\n\n") == [("c.2", "c.1", "a"), ()]
    with pytest.raises(ValidationError):
        parse_alphabet("alphabet c:3, a;")


@pytest.mark.parametrize("name", CORPUS)
def test_printed_grammar_parses_back(corpus, name):
    g = corpus(name)
    assert parse_grammar(format_grammar(g)) == g
