"""Grammar constructions: pushdown automata, look-ahead, acceptance modes and tree languages."""
from constructions.acceptance import (
    RegConversion,
    RtConversion,
    convert_acceptance_reg,
    convert_acceptance_rt,
    mark_grammar,
    mark_language,
    mark_tree,
    unmark_language,
    unmark_tree,
)
from constructions.lookahead import determinize_pf, determinize_via_lookahead
from constructions.pushdown import collapse_ext, to_grammar, to_pushdown_automaton
from constructions.trees import (
    derivation_tree_acceptor,
    path_acceptor,
    tree_acceptor_from_paths,
    yield_grammar,
)

__all__ = [
    "RegConversion",
    "RtConversion",
    "collapse_ext",
    "convert_acceptance_reg",
    "convert_acceptance_rt",
    "derivation_tree_acceptor",
    "determinize_pf",
    "determinize_via_lookahead",
    "mark_grammar",
    "mark_language",
    "mark_tree",
    "path_acceptor",
    "to_grammar",
    "to_pushdown_automaton",
    "tree_acceptor_from_paths",
    "unmark_language",
    "unmark_tree",
    "yield_grammar",
]
