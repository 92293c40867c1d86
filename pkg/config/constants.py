# ============================================================================
# FILE: config/constants.py
# ============================================================================

# Reserved symbols
EPSILON = "eps"          # rank-0 tree symbol with empty yield
END_MARKER = "ω"         # "to" component of triple nonterminals
MARK = "#"               # leaf marker of marked alphabets
FRESH_SEPARATOR = "~"    # fresh names live in the base~n namespace
BOTTOM_SUFFIX = "~b"     # bottom-marked pushdown symbols
PATH_SEPARATOR = "."     # path symbol (sigma, i) is written sigma.i

# Storage type names accepted in `storage <expr>;`
BUILTIN_STORAGE = {
    "s0": "S0",
    "pushdown": "Pushdown",
    "counter": "Counter",
    "countdown": "Countdown",
    "oneway": "Oneway",
    "tree": "Tree",
    "treewalk": "Treewalk",
    "treepushdown": "Treepushdown",
}
COMBINATORS = ("product", "pd", "pdp", "la")
DEFAULT_COUNTER_SYMBOL = "#"

# Constructions exposed by `construct <name>`
CONSTRUCTIONS = (
    "to-pda",
    "to-grammar",
    "collapse-ext",
    "det-la",
    "det-pf",
    "conv-reg",
    "conv-rt",
    "deriv-trees",
    "yield-grammar",
    "path-acceptor",
    "tree-acceptor",
    "mark",
)

# Exit codes
EXIT_OK = 0
EXIT_DOMAIN_ERROR = 1
EXIT_RESOURCE_ERROR = 2

# Construction names
AUTOMATON_STATE = "$"    # the single state of automata built from grammars
DRAIN_STATE = "Z"        # base name of the pop-down state before final rules
LOOKAHEAD_START = "_A"   # base name of the start of auxiliary look-ahead grammars
