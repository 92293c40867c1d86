import pytest
from hypothesis import given, settings as hypothesis_settings
from hypothesis import strategies as st

from models.tree import Tree
from storage.base import apply_chain, apply_instruction, eval_test
from storage.builtins import builtin
from storage.combinators import iterate_pd, pd_to_pushdown, product, pushdown_instruction_to_pd, pushdown_of, with_identity
from storage.configurations import Atom, Int, Pair, PairSeq, Str
from storage.expressions import Pred
from storage.symbols import Op, eq_pred

RANDOM_SEQUENCES = 10_000

GAMMA = ["a", "b", "#"]

pushdown_ops = st.one_of(
    st.sampled_from(GAMMA).map(lambda g: Op("push", (Op(g),))),
    st.just(Op("pop")),
    st.just(Op("stay")),
    st.sampled_from(GAMMA).map(lambda g: Op("stay", (Op(g),))),
)
pushdowns = st.lists(st.sampled_from(GAMMA), min_size=1, max_size=8).map(lambda cells: Str(tuple(cells)))


def pd_ops(inner_instructions):
    return st.one_of(
        st.tuples(st.sampled_from(GAMMA), st.sampled_from(inner_instructions)).map(
            lambda pair: Op("push", (Op(pair[0]), pair[1]))
        ),
        st.just(Op("pop")),
        st.just(Op("stay")),
        st.sampled_from(GAMMA).map(lambda g: Op("stay", (Op(g),))),
    )


def pd_configurations(inner):
    cells = st.tuples(st.sampled_from(GAMMA), inner)
    return st.lists(cells, min_size=1, max_size=6).map(lambda items: PairSeq(tuple(items)))


counts = st.integers(min_value=0, max_value=5).map(Int)
words = st.text(alphabet="ab", max_size=5).map(lambda text: Str(tuple(text)))

# name -> (storage, configurations, instructions, inner predicates)
PUSHDOWNS = {
    "pushdown": (builtin("Pushdown"), pushdowns, pushdown_ops, []),
    "pd(countdown)": (
        pushdown_of(builtin("Countdown")),
        pd_configurations(counts),
        pd_ops([Op("dec")]),
        [Op("null")],
    ),
    "pd(oneway)": (
        pushdown_of(builtin("Oneway")),
        pd_configurations(words),
        pd_ops([Op("read")]),
        [Op("empty"), eq_pred("first", "a")],
    ),
}


def _depth(c) -> int:
    return len(c.symbols) if isinstance(c, Str) else len(c)


@pytest.mark.slow
@pytest.mark.parametrize("name", list(PUSHDOWNS))
@hypothesis_settings(max_examples=RANDOM_SEQUENCES, deadline=None)
@given(data=st.data())
def test_chain_is_undefined_iff_a_prefix_is(name, data):
    s, configurations, ops, _ = PUSHDOWNS[name]
    c = data.draw(configurations)
    chain = data.draw(st.lists(ops, max_size=20))
    result = apply_chain(chain, c, s)
    current = c
    undefined = False
    for f in chain:
        current = apply_instruction(f, current, s)
        if current is None:
            undefined = True
            break
    assert (result is None) == undefined
    if not undefined:
        assert result == current


@pytest.mark.slow
@pytest.mark.parametrize("name", list(PUSHDOWNS))
@hypothesis_settings(max_examples=RANDOM_SEQUENCES, deadline=None)
@given(data=st.data())
def test_pushdown_axioms(name, data):
    s, configurations, ops, inner_predicates = PUSHDOWNS[name]
    c = data.draw(configurations)
    f = data.draw(ops)
    bottom = Pred(Op("bottom")) if name != "pushdown" else None
    if bottom is not None:
        assert eval_test(bottom, c, s) == (_depth(c) == 1)
    popped = apply_instruction(Op("pop"), c, s)
    assert (popped is None) == (_depth(c) == 1)
    moved = apply_instruction(f, c, s)
    if f.name == "push" and moved is not None:
        gamma = f.args[0].name
        assert eval_test(Pred(eq_pred("top", gamma)), moved, s)
        assert apply_instruction(Op("pop"), moved, s) == c
        assert _depth(moved) == _depth(c) + 1
        if bottom is not None:
            assert not eval_test(bottom, moved, s)
            inner = s.base.apply(f.args[1], c.top[1])
            for p in inner_predicates:
                assert eval_test(Pred(Op("test", (p,))), moved, s) == s.base.test(p, inner)
    if f.name == "stay" and f.arity == 1:
        gamma = f.args[0].name
        assert eval_test(Pred(eq_pred("top", gamma)), moved, s)
        assert _depth(moved) == _depth(c)
        assert apply_instruction(Op("pop"), moved, s) == popped
    if f == Op("stay"):
        assert moved == c


def test_push_is_undefined_where_the_inner_instruction_is():
    s = pushdown_of(builtin("Countdown"))
    assert apply_instruction(Op("push", (Op("a"), Op("dec"))), PairSeq((("#", Int(0)),)), s) is None
    s = pushdown_of(builtin("Oneway"))
    assert apply_instruction(Op("push", (Op("a"), Op("read"))), PairSeq((("#", Str(())),)), s) is None


@hypothesis_settings(max_examples=200)
@given(pushdowns, st.lists(pushdown_ops, max_size=20))
def test_pd_of_s0_commutes_with_pushdown(c, chain):
    pushdown, pd = builtin("Pushdown"), iterate_pd(1)
    cells = PairSeq(tuple((symbol, Atom("c0")) for symbol in c.symbols))
    for f in chain:
        expected = apply_instruction(f, c, pushdown)
        actual = apply_instruction(pushdown_instruction_to_pd(f), cells, pd)
        assert (expected is None) == (actual is None)
        if expected is None:
            return
        assert pd_to_pushdown(actual) == expected
        for gamma in GAMMA:
            top = Pred(eq_pred("top", gamma))
            assert eval_test(top, expected, pushdown) == eval_test(top, actual, pd)
        c, cells = expected, actual


@given(st.integers(min_value=0, max_value=30), st.integers(min_value=0, max_value=10))
def test_countdown_runs_out(n, extra):
    countdown = builtin("Countdown")
    assert apply_chain([Op("dec")] * (n + 1 + extra), Int(n), countdown) is None


@given(st.text(alphabet="ab", max_size=12), st.integers(min_value=1, max_value=5))
def test_oneway_runs_out(word, extra):
    oneway = builtin("Oneway")
    assert apply_chain([Op("read")] * (len(word) + extra), Str(tuple(word)), oneway) is None


trees = st.recursive(
    st.sampled_from(["a", "b"]).map(Tree),
    lambda children: st.tuples(st.sampled_from(["sigma", "tau"]), st.lists(children, min_size=1, max_size=3)).map(
        lambda node: Tree(node[0], tuple(node[1]))
    ),
    max_leaves=12,
)


@given(trees, st.lists(st.integers(min_value=1, max_value=3), min_size=1, max_size=20))
def test_tree_selection_runs_out(t, indices):
    tree = builtin("Tree")
    chain = [Op("sel", (Op(str(index)),)) for index in indices]
    chain += [Op("sel", (Op("1"),))] * t.depth
    assert apply_chain(chain, t, tree) is None
    assert tree.noetherian


@given(st.text(alphabet="ab", max_size=6), pushdowns, st.sampled_from(["a", "b"]))
def test_product_projects_to_its_sides(word, stack, symbol):
    s = product(with_identity(builtin("Oneway")), builtin("Pushdown"))
    c = Pair(Str(tuple(word)), stack)
    first = Pred(eq_pred("first", symbol))
    top = Pred(eq_pred("top", symbol))
    assert eval_test(first, c, s) == eval_test(first, c.left, builtin("Oneway"))
    assert eval_test(top, c, s) == eval_test(top, c.right, builtin("Pushdown"))
