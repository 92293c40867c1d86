import pytest

from delta.paths import PathAlphabet, path_symbol, paths, paths_of_language, read_path_file
from models.errors import ValidationError
from models.tree import tree_yield
from utils.parsers import parse_tree

EXAMPLE1 = {"c": 3, "a": 0, "b": 0, "eps": 0}


def test_path_alphabet():
    alphabet = PathAlphabet.of(EXAMPLE1)
    assert set(alphabet.symbols) == {"c.1", "c.2", "c.3", "a", "b", "eps"}
    assert set(alphabet.leaves) == {"a", "b", "eps"}
    assert alphabet.decode("c.2") == ("c", 2)
    assert alphabet.decode("a") == ("a", None)
    assert "c.4" not in alphabet
    with pytest.raises(ValidationError):
        alphabet.decode("a.1")
    with pytest.raises(ValidationError):
        PathAlphabet.of({"x": -1})


def test_paths_of_a_tree():
    t = parse_tree("c(a, c(a, eps, b), b)")
    assert paths(t) == frozenset(
        {
            ("c.1", "a"),
            ("c.2", "c.1", "a"),
            ("c.2", "c.2", "eps"),
            ("c.2", "c.3", "b"),
            ("c.3", "b"),
        }
    )
    assert paths(parse_tree("a")) == frozenset({("a",)})
    assert path_symbol("sigma", 2) == "sigma.2"


def test_paths_of_a_language():
    trees = [parse_tree("c(a, eps, b)"), parse_tree("c(b, eps, b)")]
    assert len(paths_of_language(trees)) == 4


def test_read_path_file():
    alphabet = PathAlphabet.of(EXAMPLE1)
    text = "# example paths\nc.1 a\n\nc.2 eps\nλ\n"
    assert read_path_file(text, alphabet) == frozenset({("c.1", "a"), ("c.2", "eps"), ()})
    with pytest.raises(ValidationError):
        read_path_file("c.1 z\n", alphabet)


def test_paths_and_yield_of_a_mixed_rank_tree():
    t = parse_tree("a(b(c, d), b(eps, c), eps)")
    assert paths(t) == frozenset(
        {
            ("a.1", "b.1", "c"),
            ("a.1", "b.2", "d"),
            ("a.2", "b.1", "eps"),
            ("a.2", "b.2", "c"),
            ("a.3", "eps"),
        }
    )
    assert tree_yield(t) == ("c", "d", "c")
    assert tree_yield(parse_tree("eps")) == ()
