"""Grammars with storage: model, desugaring, validation, determinism and normal forms.

The text parser lives in ``utils.parsers``.
"""

from grammar.desugar import desugar
from grammar.determinism import is_deterministic, is_racceptor_deterministic
from grammar.model import Call, Grammar, GrammarClass, Instance, Rule
from grammar.normal_forms import (
    cfp_test_normal_form,
    is_normal_form,
    lift_to_cfext,
    normalize_cfext,
    normalize_reg,
    normalize_rt,
)
from grammar.printer import format_grammar, grammar_key
from grammar.validate import check_grammar, validate

__all__ = [
    "Call",
    "Grammar",
    "GrammarClass",
    "Instance",
    "Rule",
    "desugar",
    "validate",
    "check_grammar",
    "is_deterministic",
    "is_racceptor_deterministic",
    "is_normal_form",
    "normalize_reg",
    "normalize_rt",
    "lift_to_cfext",
    "normalize_cfext",
    "cfp_test_normal_form",
    "format_grammar",
    "grammar_key",
]
