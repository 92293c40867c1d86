"""Storage types: configurations, tests, the built-ins and the combinators."""

from storage.base import (
    InputKind,
    StorageType,
    apply_chain,
    apply_instruction,
    encode,
    eval_test,
    is_racceptor_deterministic_storage,
)
from storage.builtins import builtin
from storage.combinators import (
    LookaheadStorage,
    Product,
    PushdownOf,
    WithIdentity,
    iterate_pd,
    product,
    pure_pushdown_of,
    pushdown_of,
    with_identity,
    with_lookahead,
)
from storage.symbols import Op

__all__ = [
    "InputKind",
    "StorageType",
    "apply_chain",
    "apply_instruction",
    "encode",
    "eval_test",
    "is_racceptor_deterministic_storage",
    "builtin",
    "LookaheadStorage",
    "Product",
    "PushdownOf",
    "WithIdentity",
    "iterate_pd",
    "product",
    "pure_pushdown_of",
    "pushdown_of",
    "with_identity",
    "with_lookahead",
    "Op",
]
