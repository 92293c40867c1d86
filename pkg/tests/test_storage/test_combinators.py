from storage.base import apply_instruction, encode, eval_test
from storage.builtins import builtin
from storage.combinators import (
    iterate_pd,
    pd_to_pushdown,
    product,
    pure_pushdown_of,
    pushdown_of,
    with_identity,
)
from storage.configurations import UNIT, Atom, Int, Pair, PairSeq, Str
from storage.expressions import Pred
from storage.symbols import Op, eq_pred, pair


def test_with_identity_is_fresh_even_when_an_identity_exists():
    s0 = with_identity(builtin("S0"))
    assert s0.identity() != Op("id")
    assert apply_instruction(s0.identity(), Atom("c0"), s0) == Atom("c0")
    oneway = with_identity(builtin("Oneway"))
    assert apply_instruction(Op("id"), Str(("a",)), oneway) == Str(("a",))


def test_product_evaluates_componentwise():
    s = product(with_identity(builtin("Oneway")), builtin("Pushdown"))
    c = Pair(Str(tuple("abc")), Str(("#",)))
    assert eval_test(Pred(eq_pred("first", "a")), c, s)
    assert not eval_test(Pred(eq_pred("top", "a")), c, s)
    assert apply_instruction(pair(Op("id"), Op("stay")), c, s) == c
    assert apply_instruction(pair(Op("read"), Op("push", (Op("a"),))), c, s) == Pair(
        Str(tuple("bc")), Str(("a", "#"))
    )
    assert apply_instruction(pair(Op("read"), Op("pop")), c, s) is None


def test_product_qualifies_shared_predicate_names():
    s = product(builtin("Pushdown"), builtin("Pushdown"))
    c = Pair(Str(("a", "#")), Str(("#",)))
    assert not s.knows_predicate(eq_pred("top", "a"))
    assert eval_test(Pred(Op("left", (eq_pred("top", "a"),))), c, s)
    assert not eval_test(Pred(Op("right", (eq_pred("top", "a"),))), c, s)


def test_pushdown_of_countdown():
    s = pushdown_of(builtin("Countdown"))
    bottom = PairSeq((("g", Int(0)),))
    assert eval_test(Pred(Op("test", (Op("null"),))), bottom, s)
    assert apply_instruction(Op("pop"), bottom, s) is None
    assert apply_instruction(Op("push", (Op("d"), Op("dec"))), bottom, s) is None
    pushed = apply_instruction(Op("push", (Op("d"), Op("dec"))), PairSeq((("g", Int(2)),)), s)
    assert pushed == PairSeq((("d", Int(1)), ("g", Int(2))))
    assert encode(pair(Op("#"), Op("en")), Int(4), s) == PairSeq((("#", Int(4)),))


def test_pure_pushdown_fixes_the_symbol():
    s = pure_pushdown_of(builtin("Countdown"))
    assert s.knows_instruction(Op("push", (Op("#"), Op("dec"))))
    assert not s.knows_instruction(Op("push", (Op("a"), Op("dec"))))


def test_iterate_pd():
    assert iterate_pd(0) == builtin("S0")
    assert iterate_pd(2) == pushdown_of(pushdown_of(builtin("S0")))


def test_pd_of_s0_matches_pushdown():
    pd = iterate_pd(1)
    c = encode(pair(Op("#"), Op("en")), UNIT, pd)
    c = apply_instruction(Op("push", (Op("a"), Op("id"))), c, pd)
    assert pd_to_pushdown(c) == Str(("a", "#"))
