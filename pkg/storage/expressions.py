"""Boolean tests BE(P) over predicate symbols, with the propositional machinery
used for desugaring and determinism checks."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterator, List, Optional, Tuple, Union

from storage.symbols import Op


@dataclass(frozen=True)
class Const:
    value: bool

    def __str__(self) -> str:
        return "true" if self.value else "false"


@dataclass(frozen=True)
class Pred:
    op: Op

    def __str__(self) -> str:
        return str(self.op)


@dataclass(frozen=True)
class Not:
    arg: "Test"

    def __str__(self) -> str:
        inner = str(self.arg)
        return f"not {inner}" if isinstance(self.arg, (Pred, Const, Not)) else f"not ({inner})"


@dataclass(frozen=True)
class And:
    args: Tuple["Test", ...]

    def __str__(self) -> str:
        return " and ".join(f"({arg})" if isinstance(arg, Or) else str(arg) for arg in self.args)


@dataclass(frozen=True)
class Or:
    args: Tuple["Test", ...]

    def __str__(self) -> str:
        return " or ".join(str(arg) for arg in self.args)


Test = Union[Const, Pred, Not, And, Or]
TRUE = Const(True)
FALSE = Const(False)

# A literal is a predicate with its polarity; a cube is a conjunction of literals.
Literal = Tuple[Op, bool]
Cube = Tuple[Literal, ...]


def pred(op: Op) -> Pred:
    return Pred(op)


def neg(test: Test) -> Test:
    if isinstance(test, Const):
        return Const(not test.value)
    if isinstance(test, Not):
        return test.arg
    return Not(test)


def conj(*tests: Test) -> Test:
    parts: List[Test] = []
    for test in tests:
        if test == TRUE:
            continue
        if test == FALSE:
            return FALSE
        if isinstance(test, And):
            parts.extend(test.args)
        elif test not in parts:
            parts.append(test)
    if not parts:
        return TRUE
    if len(parts) == 1:
        return parts[0]
    return And(tuple(parts))


def disj(*tests: Test) -> Test:
    parts: List[Test] = []
    for test in tests:
        if test == FALSE:
            continue
        if test == TRUE:
            return TRUE
        if isinstance(test, Or):
            parts.extend(test.args)
        elif test not in parts:
            parts.append(test)
    if not parts:
        return FALSE
    if len(parts) == 1:
        return parts[0]
    return Or(tuple(parts))


def from_cube(cube: Cube) -> Test:
    return conj(*(Pred(op) if positive else Not(Pred(op)) for op, positive in cube))


def atoms(test: Test) -> List[Op]:
    """Predicate symbols of the test in first-occurrence order."""
    found: List[Op] = []

    def visit(node: Test) -> None:
        if isinstance(node, Pred):
            if node.op not in found:
                found.append(node.op)
        elif isinstance(node, Not):
            visit(node.arg)
        elif isinstance(node, (And, Or)):
            for arg in node.args:
                visit(arg)

    visit(test)
    return found


def evaluate(test: Test, truth: Callable[[Op], bool]) -> bool:
    if isinstance(test, Const):
        return test.value
    if isinstance(test, Pred):
        return truth(test.op)
    if isinstance(test, Not):
        return not evaluate(test.arg, truth)
    if isinstance(test, And):
        return all(evaluate(arg, truth) for arg in test.args)
    return any(evaluate(arg, truth) for arg in test.args)


def map_predicates(test: Test, fn: Callable[[Op], Test]) -> Test:
    """Replace every predicate leaf by ``fn(op)``, simplifying constants."""
    if isinstance(test, Const):
        return test
    if isinstance(test, Pred):
        return fn(test.op)
    if isinstance(test, Not):
        return neg(map_predicates(test.arg, fn))
    if isinstance(test, And):
        return conj(*(map_predicates(arg, fn) for arg in test.args))
    return disj(*(map_predicates(arg, fn) for arg in test.args))


def restrict(test: Test, atom: Op, value: bool) -> Test:
    """Shannon cofactor of the test with ``atom`` fixed to ``value``."""
    return map_predicates(test, lambda op: Const(value) if op == atom else Pred(op))


def simplify(test: Test) -> Test:
    return map_predicates(test, Pred)


def disjoint_cubes(
    test: Test,
    exclusive: Optional[Callable[[Op, Op], bool]] = None,
) -> Iterator[Cube]:
    """Pairwise disjoint cubes whose union is the test (Shannon expansion).

    Cubes asserting two mutually exclusive predicates are skipped when an
    exclusivity relation is supplied.
    """

    def expand(node: Test, cube: Cube) -> Iterator[Cube]:
        if node == FALSE:
            return
        if node == TRUE:
            yield cube
            return
        atom = atoms(node)[0]
        for value in (True, False):
            if value and exclusive is not None:
                if any(positive and exclusive(atom, other) for other, positive in cube):
                    continue
            yield from expand(restrict(node, atom, value), cube + ((atom, value),))

    yield from expand(simplify(test), ())


def satisfiable(test: Test, exclusive: Optional[Callable[[Op, Op], bool]] = None) -> bool:
    """Propositional satisfiability modulo pairwise exclusivity axioms."""
    return next(disjoint_cubes(test, exclusive), None) is not None


def split_disjunction(test: Test) -> List[Test]:
    """``b1 or b2 or b3`` becomes ``b1``, ``not b1 and b2``, ``not b1 and not b2 and b3``."""
    if not isinstance(test, Or):
        return [test]
    result: List[Test] = []
    seen: List[Test] = []
    for arg in test.args:
        part = conj(*(neg(previous) for previous in seen), arg)
        seen.append(arg)
        if part != FALSE:
            result.append(part)
    return result
