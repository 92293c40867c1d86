from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Dict, FrozenSet, List, Optional

from pydantic import BaseModel, ConfigDict, Field

from utils.export import format_item, length_lex_key


class Bounds(BaseModel):
    """Search bounds of the derivation engine."""

    model_config = ConfigDict(frozen=True)

    max_steps: int = Field(200, gt=0, description="derivation length")
    max_len: int = Field(16, gt=0, description="output length or tree size")
    max_forms: int = Field(2_000_000, gt=0, description="frontier and closure cap")
    max_input: int = Field(6, ge=0, description="size bound for enumerating input elements")

    def widened(self, **changes: int) -> "Bounds":
        return self.model_copy(update=changes)


@dataclass(frozen=True)
class LanguageSample:
    """A finite approximation of L(G), T(G) at one input, or a tree language.

    ``complete_up_to`` is the largest length (or tree size) below or at which the
    sample is proven exhaustive; ``input_bound`` is set when only inputs up to that
    size were enumerated.
    """

    items: FrozenSet[Any]
    bounds: Bounds
    complete_up_to: int
    input_bound: Optional[int] = None
    measure: str = "length"
    notes: List[str] = field(default_factory=list, compare=False)

    @property
    def complete(self) -> bool:
        return self.complete_up_to >= self.bounds.max_len

    def sorted_items(self) -> List[Any]:
        return sorted(self.items, key=length_lex_key)

    def restricted(self, limit: int) -> FrozenSet[Any]:
        return frozenset(item for item in self.items if length_lex_key(item)[0] <= limit)

    def __len__(self) -> int:
        return len(self.items)

    def __contains__(self, item: Any) -> bool:
        return item in self.items

    def as_dict(self) -> Dict[str, Any]:
        return {
            "bounds": self.bounds.model_dump(),
            "complete_up_to": self.complete_up_to,
            "input_bound": self.input_bound,
            "measure": self.measure,
            "items": [format_item(item) for item in self.sorted_items()],
        }
