import json

from cli import main
from utils.config_loader import corpus_path


def grammar(name: str) -> str:
    return str(corpus_path(name))


def test_generate(capsys):
    assert main(["generate", grammar("anbn"), "--max-len", "4"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[:3] == ["λ", "ab", "aabb"]


def test_generate_json(capsys):
    assert main(["generate", grammar("anbn"), "--max-len", "4", "--format", "json"]) == 0
    record = json.loads(capsys.readouterr().out)
    assert record["command"] == "generate"
    assert record["complete_up_to"] == 4


def test_transduce_with_trace(capsys):
    assert main(["transduce", grammar("g1"), "--input", "2", "--trace"]) == 0
    out = capsys.readouterr().out
    assert out.splitlines()[0] == "aaaa"
    assert "# derivation of aaaa" in out


def test_validate(capsys):
    assert main(["validate", grammar("g2"), grammar("anbn_pushdown")]) == 0
    out = capsys.readouterr().out
    assert "strongest CF" in out
    assert "strongest REG" in out


def test_accept(capsys):
    assert main(["accept", grammar("g6"), "--input", "aabbcc"]) == 0
    assert capsys.readouterr().out.strip() == "Accepted"
    assert main(["accept", grammar("example2_dpda"), "--input", "c.1 b.1 a", "--finals", "F"]) == 0
    assert capsys.readouterr().out.strip() == "Accepted"


def test_construct_prints_a_grammar(capsys):
    assert main(["construct", "to-pda", grammar("g2")]) == 0
    out = capsys.readouterr().out
    assert out.startswith("storage pd(")
    assert "class REG;" in out


def test_construct_conv_reg_lists_finals(capsys):
    assert main(["construct", "conv-reg", grammar("anbn_pushdown"), "--mode", "de-to-df"]) == 1
    assert main(["construct", "conv-reg", grammar("example1_dfa"), "--mode", "df-to-reg", "--finals", "F"]) == 0
    assert main(["construct", "conv-reg", grammar("example1_dfa"), "--mode", "sideways"]) == 1


def test_delta(capsys):
    argv = ["delta", grammar("example1_dfa"), "--alphabet", "c:3, a:0, b:0, eps:0", "--size-bound", "7", "--finals", "F"]
    assert main(argv) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[:2] == ["ab", "aabb"]


def test_equiv_reports_differences_without_failing(capsys):
    assert main(["equiv", grammar("g2"), grammar("anbn_pushdown"), "--max-len", "6"]) == 0
    assert capsys.readouterr().out.startswith("DIFFERS: ab")


def test_re_witness(capsys):
    argv = ["re-witness", grammar("anbn"), grammar("anbm"), "--hom", "a=c, b=", "--size-bound", "12"]
    assert main(argv) == 0
    out = capsys.readouterr().out
    assert "# alphabet" in out
    assert "# delta: λ, c" in out


def test_domain_errors_exit_with_one(capsys):
    assert main(["generate", "no-such-file.gws"]) == 1
    assert main(["generate", grammar("anbn"), "--max-len", "0"]) == 1
    assert main(["generate", grammar("g1_tree")]) == 1


def test_resource_errors_exit_with_two(capsys):
    assert main(["generate", grammar("g2"), "--max-forms", "1"]) == 2
