"""
Grammar text parsing
The .gws format: storage/class/nonterminals/terminals/initial/encoding headers,
optional look-ahead blocks, then `rules:` with one rule per `;`
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple, Union

from lark import Lark, Transformer, v_args
from lark.exceptions import UnexpectedCharacters, UnexpectedEOF, UnexpectedInput, UnexpectedToken, VisitError

from grammar.desugar import desugar, if_then_else
from grammar.model import Call, Grammar, GrammarClass, RhsItem, Rule
from grammar.validate import check_grammar, satisfied_classes
from models.errors import GrammarSyntaxError, GwsError, ValidationError
from models.tree import Tree
from storage.base import InputKind, StorageType
from storage.builtins import builtin
from storage.combinators import (
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
from storage.configurations import UNIT, Int, Pair, Str
from storage.expressions import FALSE, TRUE, Pred, Test, conj, disj, neg
from storage.symbols import Op
from utils.export import EMPTY_STRING
from utils.logger import get_logger

logger = get_logger(__name__)

GRAMMAR = r"""
start: lookahead* header* "rules" ":" rule*
lookahead: "lookahead" SYM "{" header* "rules" ":" rule* "}"

?header: "storage" sexpr ";"                          -> h_storage
       | "class" SYM ";"                              -> h_class
       | "nonterminals" sym_list ";"                  -> h_nonterminals
       | "terminals" [terminal ("," terminal)*] ";"   -> h_terminals
       | "initial" SYM ";"                            -> h_initial
       | "encoding" arg ";"                           -> h_encoding
       | "exclusive" sym_list ";"                     -> h_exclusive

sym_list: SYM ("," SYM)*
terminal: (SYM | STRING) [":" SYM]
alphabet: "alphabet"? terminal ("," terminal)* ";"?

?sexpr: sexpr "+" SYM                       -> s_plus
      | SYM                                 -> s_name
      | SYM "(" sexpr ("," sexpr)* ")"      -> s_call
      | SYM "^" SYM ["(" sexpr ")"]         -> s_power

rule: SYM "->" body ";"
?body: rhs                                  -> plain
     | "if" test "then" rhs ["else" rhs]    -> conditional
rhs: item*
?item: SYM                                  -> i_symbol
     | STRING                               -> i_symbol
     | SYM "(" args ")"                     -> i_apply
     | STRING "(" args ")"                  -> i_apply

args: chain ("," chain)*
chain: arg (";" arg)*
?arg: SYM                                   -> a_symbol
    | STRING                                -> a_symbol
    | SYM "(" args ")"                      -> a_apply
    | STRING "(" args ")"                   -> a_apply
    | "(" args ")"                          -> a_tuple
    | "{" [set_item ("," set_item)*] "}"    -> a_set
set_item: (SYM | STRING) [":" SYM]

?test: test "or" conj                       -> t_or
     | conj
?conj: conj "and" neg                       -> t_and
     | neg
?neg: "not" neg                             -> t_not
    | "true"                                -> t_true
    | "false"                               -> t_false
    | "(" test ")"
    | pred                                  -> t_pred
pred: SYM "=" (SYM | STRING)                -> p_eq
    | SYM "(" pred ("," pred)* ")"          -> p_call
    | SYM                                   -> p_sym

SYM: /<(?:[^<>\s]|<(?:[^<>\s]|<[^<>\s]+>)+>)+>|[^\s(),;=:"<>{}+^\-]+/
STRING: /"[^"]*"/

%import common.WS
%ignore WS
"""

_STARTS = ["start", "sexpr", "arg", "alphabet", "test"]
_QUALIFIERS = ("left", "right")


@lru_cache(maxsize=1)
def get_parser() -> Lark:
    return Lark(GRAMMAR, parser="lalr", start=_STARTS, maybe_placeholders=True)


# ============================================================================
# RAW SYNTAX
# ============================================================================

@dataclass(frozen=True)
class RawTerm:
    """A term as written, before symbols are resolved against N and Δ."""

    head: str
    quoted: bool = False
    args: Optional[Tuple[Tuple["RawTerm", ...], ...]] = None
    kind: str = "term"
    entries: Tuple[Tuple[str, Optional[str]], ...] = ()
    line: int = 0
    column: int = 0


@dataclass(frozen=True)
class RawRule:
    lhs: str
    test: Test
    then_rhs: Tuple[RawTerm, ...]
    else_rhs: Optional[Tuple[RawTerm, ...]]
    line: int


def strip_comments(text: str) -> str:
    """Blank out full-line # comments, keeping line numbers intact."""
    return "\n".join("" if line.lstrip().startswith("#") else line for line in text.splitlines())


def _text(token) -> str:
    value = str(token)
    if token.type == "STRING":
        return value[1:-1]
    return value


def _raw(token, args=None) -> RawTerm:
    return RawTerm(
        head=_text(token),
        quoted=token.type == "STRING",
        args=args,
        line=getattr(token, "line", 0) or 0,
        column=getattr(token, "column", 0) or 0,
    )


def _qualified(name: str, build) -> Op:
    """``left.p`` and ``right.p`` address one side of a product."""
    prefix, dot, rest = name.partition(".")
    if dot and prefix in _QUALIFIERS and rest:
        return Op(prefix, (_qualified(rest, build),))
    return build(name)


@v_args(inline=True)
class GwsTransformer(Transformer):
    """Parse tree to raw declarations, tests and terms."""

    # storage expressions
    def s_name(self, token):
        return str(token)

    def s_call(self, token, *args):
        return ("call", str(token), args)

    def s_plus(self, base, token):
        return ("+", base, str(token))

    def s_power(self, token, exponent, arg=None):
        return ("^", str(token), str(exponent), arg)

    # tests
    def t_or(self, left, right):
        return disj(left, right)

    def t_and(self, left, right):
        return conj(left, right)

    def t_not(self, arg):
        return neg(arg)

    def t_true(self):
        return TRUE

    def t_false(self):
        return FALSE

    def t_pred(self, op):
        return Pred(op)

    def p_eq(self, name, value):
        return _qualified(str(name), lambda base: Op(f"{base}=", (Op(_text(value)),)))

    def p_call(self, name, *args):
        return _qualified(str(name), lambda base: Op(base, tuple(args)))

    def p_sym(self, name):
        return _qualified(str(name), lambda base: Op(base))

    # terms
    def i_symbol(self, token):
        return _raw(token)

    def i_apply(self, token, args):
        return _raw(token, args)

    def a_symbol(self, token):
        return _raw(token)

    def a_apply(self, token, args):
        return _raw(token, args)

    def a_tuple(self, args):
        return RawTerm("pair", args=args, kind="tuple")

    def a_set(self, *items):
        return RawTerm("set", kind="set", entries=tuple(item for item in items if item is not None))

    def set_item(self, token, rank=None):
        return (_text(token), None if rank is None else str(rank))

    def args(self, *chains):
        return tuple(chains)

    def chain(self, *terms):
        return tuple(terms)

    # rules
    def rhs(self, *items):
        return tuple(items)

    def plain(self, rhs):
        return (TRUE, rhs, None)

    def conditional(self, test, then_rhs, else_rhs=None):
        return (test, then_rhs, else_rhs)

    def rule(self, lhs, body):
        test, then_rhs, else_rhs = body
        return RawRule(str(lhs), test, then_rhs, else_rhs, lhs.line)

    # declarations
    def sym_list(self, *tokens):
        return tuple(str(token) for token in tokens)

    def terminal(self, token, rank=None):
        if rank is None:
            return (_text(token), None)
        if not str(rank).isdigit():
            raise GrammarSyntaxError(f"rank of '{_text(token)}' must be a number", rank.line, rank.column)
        return (_text(token), int(str(rank)))

    def alphabet(self, *items):
        return dict(items)

    def h_storage(self, expr):
        return ("storage", expr)

    def h_class(self, token):
        return ("class", str(token))

    def h_nonterminals(self, names):
        return ("nonterminals", names)

    def h_terminals(self, *items):
        return ("terminals", tuple(item for item in items if item is not None))

    def h_initial(self, token):
        return ("initial", str(token))

    def h_encoding(self, term):
        return ("encoding", term)

    def h_exclusive(self, names):
        return ("exclusive", names)

    def lookahead(self, key, *parts):
        return ("lookahead", str(key), parts)

    def start(self, *parts):
        return parts


def _parse(text: str, start: str, name: str = ""):
    try:
        tree = get_parser().parse(strip_comments(text), start=start)
        return GwsTransformer().transform(tree)
    except VisitError as error:
        if isinstance(error.orig_exc, GwsError):
            raise error.orig_exc from None
        raise
    except UnexpectedInput as error:
        raise GrammarSyntaxError(
            _describe(error),
            getattr(error, "line", 0),
            getattr(error, "column", 0),
            grammar=name or None,
        ) from None


def _describe(error: UnexpectedInput) -> str:
    if isinstance(error, UnexpectedEOF):
        return "unexpected end of input"
    if isinstance(error, UnexpectedToken):
        return f"unexpected token '{error.token}'"
    if isinstance(error, UnexpectedCharacters):
        return f"unexpected character '{error.char}'"
    return "syntax error"


# ============================================================================
# TERMS TO SYMBOLS
# ============================================================================

def _single(chain: Tuple[RawTerm, ...]) -> RawTerm:
    if len(chain) != 1:
        first = chain[0]
        raise GrammarSyntaxError(
            "instruction chains are only allowed directly inside a call", first.line, first.column
        )
    return chain[0]


def term_to_op(term: RawTerm) -> Op:
    """Instruction, encoding or pattern term as a symbol."""
    if term.kind == "set":
        items = tuple(
            Op(symbol) if rank is None else Op("rank", (Op(symbol), Op(rank)))
            for symbol, rank in term.entries
        )
        return Op("set", items)
    if term.kind == "tuple":
        return Op("pair", tuple(term_to_op(_single(chain)) for chain in term.args))
    if term.args is None:
        return Op(term.head)
    return Op(term.head, tuple(term_to_op(_single(chain)) for chain in term.args))


def term_to_tree(term: RawTerm) -> Tree:
    if term.kind != "term":
        raise GrammarSyntaxError("a tree cannot contain tuples or sets", term.line, term.column)
    return Tree(term.head, tuple(term_to_tree(_single(chain)) for chain in term.args or ()))


class _RuleResolver:
    """Resolves bare symbols: nonterminal if declared in N, else terminal if in Δ."""

    def __init__(self, nonterminals: Sequence[str], terminals: Sequence[str], storage: StorageType, trees: bool):
        self.nonterminals = set(nonterminals)
        self.terminals = set(terminals)
        self.storage = storage
        self.trees = trees

    def rhs(self, terms: Sequence[RawTerm], index: int) -> Tuple[RhsItem, ...]:
        items: List[RhsItem] = []
        for term in terms:
            items.extend(self.item(term, index))
        return tuple(items)

    def item(self, term: RawTerm, index: int) -> List[RhsItem]:
        if term.kind != "term":
            raise GrammarSyntaxError("tuples and sets are instruction syntax", term.line, term.column)
        if term.quoted or term.head not in self.nonterminals:
            if not term.quoted and term.head not in self.terminals:
                raise ValidationError(f"undeclared symbol '{term.head}'", rule_index=index)
            if term.args is None:
                return [term.head]
            return self.tree(term, index)
        return [self.call(term, index)]

    def call(self, term: RawTerm, index: int) -> Call:
        if term.args is None:
            identity = self.storage.identity()
            if identity is None:
                raise ValidationError(
                    f"'{term.head}' without instructions needs an identity in storage {self.storage.expr}",
                    rule_index=index,
                )
            return Call(term.head, (identity,))
        if len(term.args) == 1:
            return Call(term.head, tuple(term_to_op(part) for part in term.args[0]))
        return Call(term.head, (Op("pair", tuple(term_to_op(_single(chain)) for chain in term.args)),))

    def tree(self, term: RawTerm, index: int) -> List[RhsItem]:
        if not self.trees:
            raise ValidationError(f"tree term '{term.head}(...)' outside an RT grammar", rule_index=index)
        items: List[RhsItem] = [term.head]
        for chain in term.args:
            items.extend(self.item(_single(chain), index))
        return items


# ============================================================================
# DECLARATIONS TO GRAMMARS
# ============================================================================

Registry = List[Tuple[str, Grammar]]


def build_storage(
    node,
    registry: Optional[Registry] = None,
    exclusive: Sequence[Sequence[str]] = (),
) -> StorageType:
    """Storage type of a parsed storage expression."""
    if isinstance(node, str):
        return builtin(node)
    kind = node[0]
    if kind == "+":
        base = build_storage(node[1], registry, exclusive)
        return with_identity(base) if node[2] == "id" else WithIdentity(base, node[2])
    if kind == "^":
        _, name, exponent, arg = node
        if name.lower() != "pd" or not exponent.isdigit():
            raise ValidationError(f"Unknown storage power '{name}^{exponent}'")
        base = build_storage(arg, registry, exclusive) if arg is not None else None
        return iterate_pd(int(exponent), base)
    _, name, args = node
    name = name.lower()
    if name == "product" and len(args) == 2:
        return product(build_storage(args[0], registry, exclusive), build_storage(args[1], registry, exclusive))
    if name == "pd" and len(args) in (1, 2):
        stayf = len(args) == 2
        if stayf and args[1] != "stayf":
            raise ValidationError(f"Unknown pd option '{args[1]}'")
        return pushdown_of(build_storage(args[0], registry, exclusive), stayf=stayf)
    if name == "pdp" and len(args) in (1, 2):
        base = build_storage(args[0], registry, exclusive)
        return pure_pushdown_of(base, args[1]) if len(args) == 2 else pure_pushdown_of(base)
    if name == "counter" and len(args) == 1 and isinstance(args[0], str):
        return builtin("Counter", symbol=args[0])
    if name == "la" and len(args) == 2 and isinstance(args[1], str) and args[1].isdigit():
        base = build_storage(args[0], registry, exclusive)
        return with_lookahead(base, registry or [], step_bound=int(args[1]), exclusive_groups=exclusive)
    raise ValidationError(f"Unknown storage type '{name}' with {len(args)} arguments")


def _quoted_symbols(rules: Sequence[RawRule]) -> List[str]:
    found: List[str] = []

    def visit(term: RawTerm) -> None:
        if term.kind != "term":
            return
        if term.quoted and term.head not in found:
            found.append(term.head)
        for chain in term.args or ():
            for part in chain:
                visit(part)

    for rule in rules:
        for term in rule.then_rhs + (rule.else_rhs or ()):
            visit(term)
    return found


def _assemble(parts, name: str) -> Grammar:
    headers: Dict[str, object] = {}
    exclusive: List[Tuple[str, ...]] = []
    registry: Registry = []
    raw_rules: List[RawRule] = []
    for part in parts:
        if isinstance(part, RawRule):
            raw_rules.append(part)
        elif part[0] == "lookahead":
            registry.append((part[1], _assemble(part[2], part[1])))
        elif part[0] == "exclusive":
            exclusive.append(part[1])
        elif part[0] in headers:
            raise ValidationError(f"duplicate '{part[0]}' declaration", grammar=name or None)
        else:
            headers[part[0]] = part[1]

    for required in ("storage", "nonterminals", "initial", "encoding"):
        if required not in headers:
            raise ValidationError(f"missing '{required}' declaration", grammar=name or None)

    storage = build_storage(headers["storage"], registry, exclusive)
    nonterminals = tuple(headers["nonterminals"])
    if "terminals" in headers:
        terminals = tuple(headers["terminals"])
    else:
        terminals = tuple((symbol, None) for symbol in _quoted_symbols(raw_rules))
    ranked = any(rank is not None for _, rank in terminals)

    if "class" in headers:
        try:
            grammar_class = GrammarClass.parse(headers["class"])
        except ValueError as error:
            raise ValidationError(str(error), grammar=name or None) from None
    else:
        grammar_class = GrammarClass.RT if ranked else None

    resolver = _RuleResolver(
        nonterminals,
        [symbol for symbol, _ in terminals],
        storage,
        trees=grammar_class == GrammarClass.RT,
    )
    rules: List[Rule] = []
    for index, raw in enumerate(raw_rules):
        then_rhs = resolver.rhs(raw.then_rhs, index)
        if raw.else_rhs is None:
            rules.append(Rule(raw.lhs, raw.test, then_rhs))
        else:
            rules.extend(if_then_else(raw.lhs, raw.test, then_rhs, resolver.rhs(raw.else_rhs, index)))

    g = Grammar(
        storage=storage,
        nonterminals=nonterminals,
        terminals=terminals,
        initial=str(headers["initial"]),
        encoding=term_to_op(headers["encoding"]),
        rules=tuple(rules),
        grammar_class=grammar_class or GrammarClass.CF,
        name=name,
    )
    g = desugar(g, expand_chains=False)
    if grammar_class is None and GrammarClass.REG in satisfied_classes(g):
        g = g.with_rules(g.rules, grammar_class=GrammarClass.REG)
    return check_grammar(g)


# ============================================================================
# PUBLIC ENTRY POINTS
# ============================================================================

def parse_grammar(text: str, name: str = "") -> Grammar:
    """Parse, desugar and validate a grammar in the .gws text format."""
    parts = _parse(text, "start", name)
    g = _assemble(parts, name)
    logger.debug(f"parsed {g}: {len(g.rules)} rules over {g.storage.expr}")
    return g


def load_grammar(path: Union[str, Path]) -> Grammar:
    path = Path(path)
    return parse_grammar(path.read_text(encoding="utf-8"), name=path.stem)


def parse_storage(text: str) -> StorageType:
    """A storage expression such as ``product(oneway+id, pushdown)`` or ``pd^2``."""
    return build_storage(_parse(text, "sexpr"))


def parse_test(text: str) -> Test:
    return _parse(text, "test")


def parse_op(text: str) -> Op:
    """An instruction or encoding symbol such as ``push(#, dec)``."""
    return term_to_op(_parse(text, "arg"))


def parse_tree(text: str) -> Tree:
    """A ranked tree in term notation, e.g. ``sigma(a, tau(b, c))``."""
    return term_to_tree(_parse(text, "arg"))


def parse_alphabet(text: str) -> Dict[str, int]:
    """``alphabet c:3, a:0, eps:0;`` as a rank table; every symbol needs a rank."""
    table = _parse(text, "alphabet")
    missing = [symbol for symbol, rank in table.items() if rank is None]
    if missing:
        raise ValidationError(f"symbols without rank in alphabet: {missing}")
    return table


def parse_word(text: str) -> Tuple[str, ...]:
    """Whitespace-separated symbols, or single characters when there is no whitespace."""
    text = text.strip()
    if not text or text == EMPTY_STRING:
        return ()
    if any(character.isspace() for character in text):
        return tuple(text.split())
    return tuple(text)


def parse_input(text: str, storage: StorageType, encoding: Op):
    """An input element of the given encoding: ``u0``, an integer, a word, a tree,
    or ``left | right`` for product inputs."""
    kind = storage.input_kind(encoding)
    if kind == InputKind.UNIT:
        return UNIT
    if kind == InputKind.INT:
        if not text.strip().isdigit():
            raise ValidationError(f"input '{text}' is not a nonnegative integer")
        return Int(int(text.strip()))
    if kind == InputKind.STR:
        return Str(parse_word(text))
    if kind == InputKind.TREE:
        return parse_tree(text)
    left, bar, right = text.partition("|")
    if not bar:
        raise ValidationError(f"input '{text}' should have the form 'left | right'")
    while not isinstance(storage, Product) and hasattr(storage, "base"):
        if isinstance(storage, PushdownOf):
            encoding = encoding.args[1]
        storage = storage.base
    return Pair(_component(left, storage.left, encoding.args[0]), _component(right, storage.right, encoding.args[1]))


def _component(text: str, storage: StorageType, encoding: Op):
    return storage.coerce_input(encoding, parse_input(text, storage, encoding))


def parse_path_file(text: str) -> List[Tuple[str, ...]]:
    """One path string per line; symbols separated by blanks, ``λ`` for the empty string."""
    words = []
    for line in strip_comments(text).splitlines():
        line = line.strip()
        if not line:
            continue
        words.append(() if line == EMPTY_STRING else tuple(line.split()))
    return words
