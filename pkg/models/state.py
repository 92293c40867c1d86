from typing import Any, Dict, List, Optional, TypedDict


class CommandRecord(TypedDict, total=False):
    """The JSON record printed by ``--format json``."""

    command: str
    bounds: Dict[str, int]
    complete_up_to: Optional[int]
    input_bound: Optional[int]
    measure: str
    items: List[str]
    input: str
    traces: List[str]
    finals: Optional[List[str]]
    construction: str
    notes: List[str]
    size_bound: int
    continuity: Dict[str, Any]
    alphabet: Dict[str, int]
    delta: List[str]
    image: List[str]
    result: Any
