"""Derivation engine: bounded search, acceptance and recognizers."""
from engine.acceptance import accept_final_state, configuration_accepted, d_accept
from engine.recognizer import FiniteRecognizer, RegRecognizer, recognizer_for
from engine.search import (
    DerivationTrace,
    Strategy,
    derive_step,
    find_derivation,
    generate,
    generate_trees,
    instantiate,
    is_functional,
    is_prefix_free,
    transduce,
)
from models.tree import tree_yield

__all__ = [
    "DerivationTrace",
    "FiniteRecognizer",
    "RegRecognizer",
    "Strategy",
    "accept_final_state",
    "configuration_accepted",
    "d_accept",
    "derive_step",
    "find_derivation",
    "generate",
    "generate_trees",
    "instantiate",
    "is_functional",
    "is_prefix_free",
    "recognizer_for",
    "transduce",
    "tree_yield",
]
