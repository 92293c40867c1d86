"""Canonical grammar text: the inverse of the parser, used for output and keys."""
from __future__ import annotations

import hashlib
import re
from typing import Dict, List, Sequence

from grammar.model import Call, Grammar, GrammarClass, RhsItem, Rule
from storage.combinators import LookaheadStorage
from storage.expressions import TRUE
from storage.symbols import Op

_INDENT = "    "
_PLAIN = re.compile(r'<\S*>$|[^\s(),;=:"<>{}+^\-]+$')


def quote(symbol: str) -> str:
    return f'"{symbol}"'


def format_symbol(symbol: str) -> str:
    return symbol if _PLAIN.match(symbol) else quote(symbol)


def format_op(op: Op) -> str:
    """Like str(op), with symbols that are not plain identifiers quoted."""
    if op.name == "set":
        return "{" + ", ".join(format_op(arg) for arg in op.args) + "}"
    if op.name == "rank":
        return f"{format_symbol(op.arg_name(0))}:{op.arg_name(1)}"
    if op.name == "pair":
        return f"({', '.join(format_op(arg) for arg in op.args)})"
    if not op.args:
        return format_symbol(op.name)
    return f"{format_symbol(op.name)}({', '.join(format_op(arg) for arg in op.args)})"


def format_term(items: Sequence[RhsItem], ranks: Dict[str, int]) -> str:
    """Nested term notation of a prefix-order tree right-hand side."""
    position = 0

    def build() -> str:
        nonlocal position
        head = items[position]
        position += 1
        if isinstance(head, Call):
            return str(head)
        rank = ranks.get(head, 0)
        if rank == 0:
            return quote(head)
        children = [build() for _ in range(rank)]
        return f"{quote(head)}({', '.join(children)})"

    return build()


def format_rhs(rule: Rule, g: Grammar) -> str:
    if g.grammar_class == GrammarClass.RT and rule.rhs:
        return format_term(rule.rhs, g.ranks)
    return " ".join(str(item) if isinstance(item, Call) else quote(item) for item in rule.rhs)


def format_rule(rule: Rule, g: Grammar) -> str:
    rhs = format_rhs(rule, g)
    body = rhs if rule.test == TRUE else f"if {rule.test} then {rhs}".rstrip()
    return f"{rule.lhs} -> {body};"


def _format_terminal(symbol: str, rank) -> str:
    return quote(symbol) if rank is None else f"{quote(symbol)}:{rank}"


def _declarations(g: Grammar) -> List[str]:
    lines = [
        f"storage {g.storage.expr};",
        f"class {g.grammar_class.value};",
        f"nonterminals {', '.join(g.nonterminals)};",
    ]
    if g.terminals:
        lines.append(f"terminals {', '.join(_format_terminal(s, r) for s, r in g.terminals)};")
    lines.append(f"initial {g.initial};")
    lines.append(f"encoding {format_op(g.encoding)};")
    lines.append("rules:")
    lines.extend(_INDENT + format_rule(rule, g) for rule in g.rules)
    return lines


def format_grammar(g: Grammar) -> str:
    lines: List[str] = []
    storage = g.storage
    if isinstance(storage, LookaheadStorage):
        for key, auxiliary in storage.registry():
            lines.append(f"lookahead {key} {{")
            lines.extend(_INDENT + line for line in format_grammar(auxiliary).splitlines())
            lines.append("}")
        for group in storage.exclusive_groups:
            lines.append(f"exclusive {', '.join(sorted(group))};")
    lines.extend(_declarations(g))
    return "\n".join(lines) + "\n"


def grammar_key(g: Grammar) -> str:
    """Short content hash of the canonical text; equal grammars share a key."""
    digest = hashlib.sha1(format_grammar(g).encode("utf-8")).hexdigest()
    return f"g{digest[:12]}"
