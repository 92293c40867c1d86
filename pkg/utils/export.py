"""
Export utilities for text and JSON output
Length-lexicographic ordering keeps golden files diff-stable
"""

import json
from typing import Any, Dict, Iterable, List, Sequence, Tuple

from models.tree import Tree

EMPTY_STRING = "λ"


def format_string(symbols: Sequence[str]) -> str:
    """Render a terminal string: symbols glued when all are single characters, else space separated"""
    if not symbols:
        return EMPTY_STRING
    if all(len(symbol) == 1 for symbol in symbols):
        return "".join(symbols)
    return " ".join(symbols)


def format_item(item: Any) -> str:
    if isinstance(item, Tree):
        return str(item)
    if isinstance(item, tuple):
        return format_string(item)
    return str(item)


def length_lex_key(item: Any) -> Tuple[int, Any]:
    if isinstance(item, Tree):
        return (item.size, str(item))
    if isinstance(item, tuple):
        return (len(item), item)
    text = str(item)
    return (len(text), text)


def sort_length_lex(items: Iterable[Any]) -> List[Any]:
    return sorted(items, key=length_lex_key)


def export_to_text(items: Iterable[Any]) -> str:
    return "\n".join(format_item(item) for item in sort_length_lex(items))


def export_to_json(results: Dict[str, Any]) -> str:
    return json.dumps(results, indent=2, ensure_ascii=False, default=str)
