"""Path languages and the delta operation on them."""
from delta.paths import PathAlphabet, format_path, path_symbol, paths, paths_of_language, read_path_file
from delta.operations import DeltaSpec, continuity_check, delta, naive_tree_delta, tree_delta
from delta.witness import ReWitness, image_of_intersection, re_witness

__all__ = [
    "DeltaSpec",
    "PathAlphabet",
    "ReWitness",
    "continuity_check",
    "delta",
    "format_path",
    "image_of_intersection",
    "naive_tree_delta",
    "path_symbol",
    "paths",
    "paths_of_language",
    "re_witness",
    "read_path_file",
    "tree_delta",
]
