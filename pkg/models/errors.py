"""Exception hierarchy shared by every package; the CLI maps it onto exit codes."""
from __future__ import annotations

from typing import Optional


class GwsError(Exception):
    """Base error carrying the grammar, rule index and construction it concerns."""

    def __init__(
        self,
        message: str,
        *,
        grammar: Optional[str] = None,
        rule_index: Optional[int] = None,
        construction: Optional[str] = None,
    ) -> None:
        self.message = message
        self.grammar = grammar
        self.rule_index = rule_index
        self.construction = construction
        super().__init__(self._render())

    def _render(self) -> str:
        context = []
        if self.grammar:
            context.append(f"grammar {self.grammar}")
        if self.rule_index is not None:
            context.append(f"rule {self.rule_index}")
        if self.construction:
            context.append(f"construction {self.construction}")
        if not context:
            return self.message
        return f"{self.message} [{', '.join(context)}]"


class DomainError(GwsError):
    """Invalid input or violated precondition (exit code 1)."""


class GrammarSyntaxError(DomainError):
    def __init__(self, message: str, line: int, column: int, **context) -> None:
        self.line = line
        self.column = column
        super().__init__(f"{message} at line {line}, column {column}", **context)


class ValidationError(DomainError):
    """Undeclared symbols, unknown predicates or instructions, class mismatches."""


class PreconditionError(DomainError):
    """A construction or engine operation was applied outside its domain."""


class UncertifiedSampleError(PreconditionError):
    """A bounded sample cannot be certified complete where completeness is required."""


class ResourceError(GwsError):
    """A search bound was exhausted (exit code 2)."""


class FrontierOverflow(ResourceError):
    """More sentential forms or closure items than max_forms allows."""


class LookaheadUnknown(ResourceError):
    """An acc(G) look-ahead test could not be decided within its step bound."""
