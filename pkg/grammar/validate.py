"""Class validation: which of REG, CF_ext, CF and RT a grammar's rules satisfy."""
from __future__ import annotations

from dataclasses import replace
from typing import List, Optional

from grammar.determinism import is_deterministic, is_racceptor_deterministic
from grammar.model import Call, Grammar, GrammarClass, Rule, is_tail_call
from grammar.normal_forms import is_normal_form, subterm_end
from models.errors import GwsError, PreconditionError, ValidationError
from models.responses import ClassificationReport
from models.schemas import Bounds
from storage.combinators import WithIdentity
from storage.expressions import atoms


def _is_reg_rule(rule: Rule) -> bool:
    """w or wB(f)."""
    calls = [position for position, item in enumerate(rule.rhs) if isinstance(item, Call)]
    return not calls or calls == [len(rule.rhs) - 1]


def _is_cfext_rule(rule: Rule, g: Grammar) -> bool:
    tails = [position for position, item in enumerate(rule.rhs) if is_tail_call(item, g.storage)]
    return all(position == len(rule.rhs) - 1 for position in tails)


def _is_rt_rule(rule: Rule, g: Grammar) -> bool:
    ranks = g.ranks
    rhs = rule.rhs
    if not rhs:
        return False
    try:
        for item in rhs:
            if isinstance(item, str) and item not in ranks:
                return False
        return subterm_end(rhs, 0, ranks) == len(rhs)
    except IndexError:
        return False


def satisfied_classes(g: Grammar) -> List[GrammarClass]:
    """Classes the rules satisfy, strongest first."""
    if g.grammar_class == GrammarClass.RT:
        return [GrammarClass.RT] if all(_is_rt_rule(rule, g) for rule in g.rules) else []
    found: List[GrammarClass] = []
    if all(_is_reg_rule(rule) for rule in g.rules):
        found.append(GrammarClass.REG)
    if isinstance(g.storage, WithIdentity) and all(_is_cfext_rule(rule, g) for rule in g.rules):
        found.append(GrammarClass.CF_EXT)
    found.append(GrammarClass.CF)
    return found


def declaration_problems(g: Grammar) -> List[str]:
    """Undeclared symbols and unknown predicate, instruction or encoding symbols."""
    problems: List[str] = []
    storage = g.storage
    if g.initial not in g.nonterminals:
        problems.append(f"initial nonterminal '{g.initial}' is not declared")
    overlap = set(g.nonterminals) & set(g.terminal_names)
    if overlap:
        problems.append(f"symbols declared both as nonterminal and terminal: {sorted(overlap)}")
    if g.grammar_class == GrammarClass.RT:
        unranked = [symbol for symbol, rank in g.terminals if rank is None]
        if unranked:
            problems.append(f"terminals without rank in an RT grammar: {unranked}")
    if not storage.knows_encoding(g.encoding):
        problems.append(f"unknown encoding symbol '{g.encoding}' for storage {storage.expr}")
    for index, rule in enumerate(g.rules):
        if rule.lhs not in g.nonterminals:
            problems.append(f"rule {index}: undeclared nonterminal '{rule.lhs}'")
        for op in atoms(rule.test):
            if not storage.knows_predicate(op):
                problems.append(f"rule {index}: unknown predicate symbol '{op}' for storage {storage.expr}")
        for item in rule.rhs:
            if isinstance(item, Call):
                if item.nonterminal not in g.nonterminals:
                    problems.append(f"rule {index}: undeclared nonterminal '{item.nonterminal}'")
                for f in item.chain:
                    if not storage.knows_instruction(f):
                        problems.append(f"rule {index}: unknown instruction symbol '{f}' for storage {storage.expr}")
            elif item not in g.terminal_names:
                problems.append(f"rule {index}: undeclared terminal '{item}'")
    return problems


def check_grammar(g: Grammar) -> Grammar:
    """Raise ValidationError on the first declaration or class problem."""
    problems = declaration_problems(g)
    classes = satisfied_classes(g)
    if g.grammar_class not in classes:
        problems.append(f"rules do not fit the declared class {g.grammar_class.value}")
    if problems:
        raise ValidationError("; ".join(problems), grammar=str(g))
    return g


def strongest_class(g: Grammar) -> Optional[GrammarClass]:
    classes = satisfied_classes(g)
    return classes[0] if classes else None


def validate(g: Grammar, bounds: Optional[Bounds] = None) -> ClassificationReport:
    """Report the strongest class and the determinism flags; problems are listed, not repaired."""
    classes = satisfied_classes(g)
    problems = declaration_problems(g)
    if g.grammar_class not in classes:
        problems.append(f"rules do not fit the declared class {g.grammar_class.value}")
    strongest = replace(g, grammar_class=classes[0]) if classes else g
    report = ClassificationReport(
        grammar=str(g),
        declared=g.grammar_class.value,
        strongest=classes[0].value if classes else None,
        classes=[item.value for item in classes],
        normal_form=is_normal_form(strongest),
        problems=problems,
    )
    if problems:
        return report
    try:
        report.deterministic = is_deterministic(g, bounds)
    except GwsError as error:
        report.notes.append(f"determinism check failed: {error}")
    if strongest.grammar_class in (GrammarClass.REG, GrammarClass.RT):
        try:
            report.racceptor_deterministic = is_racceptor_deterministic(strongest)
        except PreconditionError as error:
            report.notes.append(f"r-acceptor determinism not checked: {error.message}")
    return report
