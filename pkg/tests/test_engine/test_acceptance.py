from dataclasses import dataclass, replace

import pytest

from engine.acceptance import accept_final_state, d_accept, explore_instances, final_state_language
from engine.recognizer import FiniteRecognizer, RegRecognizer, recognizer_for
from grammar.model import Instance
from models.errors import PreconditionError
from models.responses import AcceptOutcome
from models.schemas import Bounds
from storage.builtins import OnewayStorage
from storage.combinators import product, with_identity
from storage.configurations import UNIT, Int, Str
from utils.parsers import parse_grammar

BOUNDS = Bounds(max_len=16, max_steps=120)
# a cut open-tape search only keeps a prefix alive
OPEN_DEPTH = 40

LOOP = """
storage s0;
nonterminals A;
terminals a;
initial A;
encoding en;
rules:
A -> A;
A -> if false then a;
"""

GROWING = """
storage pushdown;
nonterminals A;
terminals a;
initial A;
encoding #;
rules:
A -> A(push(a));
"""


OPEN = "…"


@dataclass(frozen=True)
class OpenTape(OnewayStorage):
    """A tape whose unread tail is unknown: every test holds on it and reading keeps it."""

    noetherian = False

    def test(self, p, c):
        return True if c.symbols[:1] == (OPEN,) else super().test(p, c)

    def apply(self, f, c):
        return c if c.symbols[:1] == (OPEN,) else super().apply(f, c)

    def encode(self, e, u):
        return u


def _members(limit: int):
    return {("a",) * n + ("b",) * n + ("c",) * n for n in range(1, limit + 1)}


def _no_extension_accepted(open_g, prefix) -> bool:
    root = Instance(open_g.initial, open_g.storage.encode(open_g.encoding, Str(prefix + (OPEN,))))
    graph = explore_instances(open_g, root, OPEN_DEPTH, BOUNDS.max_forms)
    return graph.exhaustive and root not in graph.accepted()


def test_g6_accepts_exactly_abc_up_to_length_15(corpus):
    g6 = corpus("g6")
    # the open tape over-approximates only negation-free tests
    assert all("not" not in str(rule.test) for rule in g6.rules)
    open_g6 = replace(g6, storage=product(with_identity(OpenTape()), g6.storage.right))
    accepted, pending, visited = set(), [()], 0
    while pending:
        prefix = pending.pop()
        visited += 1
        outcome = d_accept(g6, Str(prefix), BOUNDS)
        if outcome == AcceptOutcome.ACCEPTED:
            accepted.add(prefix)
        else:
            assert outcome == AcceptOutcome.REJECTED_WITHIN_BOUNDS, prefix
        if len(prefix) < 15 and not _no_extension_accepted(open_g6, prefix):
            pending.extend(prefix + (symbol,) for symbol in "abc")
    assert accepted == _members(5)
    assert visited < 3 ** 8


@pytest.mark.parametrize("text", ["abcb", "aabbccb", "abcbb", "abcabc", "abbc", "abcc"])
def test_g6_rejects_letters_after_the_cs(corpus, text):
    assert d_accept(corpus("g6"), Str(tuple(text)), BOUNDS) == AcceptOutcome.REJECTED_WITHIN_BOUNDS


def test_open_tape_never_prunes_a_member_prefix(corpus):
    g6 = corpus("g6")
    open_g6 = replace(g6, storage=product(with_identity(OpenTape()), g6.storage.right))
    for word in _members(3):
        for cut in range(len(word) + 1):
            assert not _no_extension_accepted(open_g6, word[:cut])
    assert _no_extension_accepted(open_g6, ("b",))
    assert _no_extension_accepted(open_g6, tuple("abb"))


def test_g1_accepts_every_count(corpus):
    for n in range(4):
        assert d_accept(corpus("g1"), Int(n), BOUNDS) == AcceptOutcome.ACCEPTED


def test_cycles_exhaust_instead_of_rejecting():
    assert d_accept(parse_grammar(LOOP), UNIT, BOUNDS) == AcceptOutcome.EXHAUSTED


def test_cut_search_exhausts():
    assert d_accept(parse_grammar(GROWING), UNIT, Bounds(max_steps=10)) == AcceptOutcome.EXHAUSTED


def test_undefined_encoding_is_rejected(corpus):
    assert d_accept(corpus("g6"), Str(("d",)), BOUNDS) == AcceptOutcome.REJECTED_WITHIN_BOUNDS


def test_final_state_acceptance_of_example2(corpus):
    dpda = corpus("example2_dpda")
    assert accept_final_state(dpda, ["F"], ("a",))
    assert accept_final_state(dpda, ["F"], ("c.1", "b.2", "a"))
    assert accept_final_state(dpda, ["F"], ("c.1", "c.1", "b.1", "b.2", "a"))
    assert not accept_final_state(dpda, ["F"], ("c.1", "a"))
    assert not accept_final_state(dpda, ["F"], ("a", "a"))
    assert not accept_final_state(dpda, ["F"], ("d",))


def test_final_state_acceptance_needs_reg(corpus):
    with pytest.raises(PreconditionError):
        accept_final_state(corpus("g2"), ["A"], ("a",))
    with pytest.raises(PreconditionError):
        accept_final_state(corpus("example2_dpda"), ["Q"], ("a",))


def test_final_state_language_of_example1(corpus):
    dfa = corpus("example1_dfa")
    words = [
        ("c.1", "a"),
        ("c.3", "b"),
        ("c.2", "c.1", "a"),
        ("c.2", "eps"),
        ("c.2", "c.2", "eps"),
        ("c.1", "b"),
        ("eps",),
        ("c.2",),
    ]
    assert final_state_language(dfa, frozenset({"F"}), words) == frozenset(words[:5])


def test_reg_recognizer_by_empty_store(corpus):
    recognizer = RegRecognizer(corpus("anbn_pushdown"))
    assert recognizer.accepts_word(())
    assert recognizer.accepts_word(("a", "a", "b", "b"))
    assert not recognizer.accepts_word(("a", "b", "b"))
    assert not recognizer.accepts_word(("b", "a"))


def test_recognizer_for_cf_grammar_goes_through_the_automaton(corpus):
    recognizer = recognizer_for(corpus("g2"))
    assert recognizer.accepts_word(())
    assert recognizer.accepts_word(tuple("aabbcc"))
    assert not recognizer.accepts_word(tuple("aabbc"))
    assert not recognizer.accepts_word(tuple("abcabc"))


def test_recognizer_rejects_tree_grammars(corpus):
    with pytest.raises(PreconditionError):
        recognizer_for(corpus("g1_tree"))


def test_finite_recognizer():
    recognizer = FiniteRecognizer([("a", "b"), ()])
    assert recognizer.accepts_word(())
    assert recognizer.accepts_word(("a", "b"))
    assert not recognizer.accepts_word(("a",))
    assert not recognizer.step(recognizer.start(), "b")
