import pytest

from delta.operations import delta
from delta.witness import homomorphism_from_pairs, image_of_intersection, re_witness
from models.errors import PreconditionError
from models.schemas import Bounds
from utils.parsers import parse_grammar

ERASE_B = {"a": ("c",), "b": ()}


def test_witness_matches_the_image_of_the_intersection(corpus):
    left, right = corpus("anbn"), corpus("anbm")
    witness = re_witness(left, right, ERASE_B)
    produced = delta(witness.spec(27)).items
    expected = image_of_intersection(left, right, ERASE_B, Bounds(max_len=8, max_steps=40)).items
    assert produced == frozenset(("c",) * n for n in range(5))
    assert produced == expected


AB_ONLY = """
storage s0;
nonterminals A;
terminals a, b;
initial A;
encoding en;
rules:
A -> a b;
"""
BA_ONLY = AB_ONLY.replace("A -> a b;", "A -> b a;")
SMALL_BOUNDS = Bounds(max_len=4, max_steps=20)


@pytest.mark.parametrize(
    "h, image",
    [
        ({"a": ("a",), "b": ("b",)}, ("a", "b")),
        ({"a": (), "b": ("b",)}, ("b",)),
        ({"a": ("c", "d", "c"), "b": ()}, ("c", "d", "c")),
    ],
)
def test_witness_of_a_single_common_word(h, image):
    ab = parse_grammar(AB_ONLY)
    witness = re_witness(ab, ab, h)
    produced = delta(witness.spec(15)).items
    assert produced == frozenset({image})
    assert produced == image_of_intersection(ab, ab, h, SMALL_BOUNDS).items


def test_witness_of_disjoint_languages_is_empty():
    h = {"a": ("a",), "b": ("b",)}
    left, right = parse_grammar(AB_ONLY), parse_grammar(BA_ONLY)
    assert not delta(re_witness(left, right, h).spec(15)).items
    assert not image_of_intersection(left, right, h, SMALL_BOUNDS).items


def test_witness_alphabet(corpus):
    witness = re_witness(corpus("anbn"), corpus("anbm"), ERASE_B)
    ranks = witness.rank_of
    assert ranks["#1"] == 1
    assert ranks["#2"] == 2
    assert ranks["$"] == 2
    assert ranks["eps"] == 0
    assert ranks["c"] == 0
    assert ranks["a"] == 2 and ranks["b"] == 2


def test_clashing_letters_are_renamed(corpus):
    witness = re_witness(corpus("anbn"), corpus("anbm"), {"a": ("a",), "b": ()})
    letters = dict(witness.letters)
    assert letters["a"] != "a"
    assert witness.rank_of["a"] == 0
    assert witness.rank_of[letters["a"]] == 2


def test_witness_needs_linear_grammars(corpus):
    with pytest.raises(PreconditionError):
        re_witness(corpus("g2"), corpus("anbm"), ERASE_B)
    with pytest.raises(PreconditionError):
        re_witness(corpus("anbn"), corpus("anbm"), {"a": ("c",)})


def test_homomorphism_from_pairs():
    assert homomorphism_from_pairs([("a", ["c"]), ("b", [])]) == {"a": ("c",), "b": ()}
    with pytest.raises(PreconditionError):
        homomorphism_from_pairs([("a", ["c"]), ("a", [])])
