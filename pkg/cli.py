#!/usr/bin/env python3
"""
gws command line
Grammars with storage: generate, transduce, accept, construct and delta over .gws files
"""

import argparse
import sys
from typing import List, Optional

from config.constants import CONSTRUCTIONS, EXIT_DOMAIN_ERROR, EXIT_OK, EXIT_RESOURCE_ERROR
from config.settings import settings
from models.errors import DomainError, ResourceError
from utils import console_log
from utils.config_loader import default_bounds
from utils.export import export_to_json
from utils.logger import set_level
from utils.validators import validate_positive
from workflows.commands import (
    CommandOutput,
    ConstructOptions,
    construct,
    delta_spec,
    read_alphabet,
    read_grammar,
    run_accept,
    run_delta,
    run_equiv,
    run_generate,
    run_re_witness,
    run_transduce,
    run_trees,
    run_validate,
)


def _names(text: Optional[str]) -> Optional[List[str]]:
    if text is None:
        return None
    return [name.strip() for name in text.split(",") if name.strip()]


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--max-len", type=int, help=f"output length or tree size bound (default {settings.MAX_LEN})")
    common.add_argument("--max-steps", type=int, help=f"derivation length bound (default {settings.MAX_STEPS})")
    common.add_argument("--max-forms", type=int, help=f"frontier cap (default {settings.MAX_FORMS})")
    common.add_argument("--max-input", type=int, help=f"input size bound for enumerating inputs (default {settings.MAX_INPUT})")
    common.add_argument("--jobs", type=int, default=None, help=f"worker threads (default {settings.JOBS})")
    common.add_argument("--format", choices=["text", "json"], default="text", help="output format")
    common.add_argument("--progress", action="store_true", help="show progress bars on stderr")
    common.add_argument("--log-level", default=None, help=f"logging level (default {settings.LOG_LEVEL})")

    parser = argparse.ArgumentParser(
        prog="gws",
        description="A workbench for context-free grammars with storage",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    validate = commands.add_parser("validate", parents=[common], help="parse grammars and report their classes")
    validate.add_argument("grammars", nargs="+")

    generate = commands.add_parser("generate", parents=[common], help="bounded L(G)")
    generate.add_argument("grammar")

    trees = commands.add_parser("trees", parents=[common], help="bounded tree language of an RT grammar")
    trees.add_argument("grammar")

    transduce = commands.add_parser("transduce", parents=[common], help="bounded T(G) at one input")
    transduce.add_argument("grammar")
    transduce.add_argument("--input", default="", help="input element: integer, word, tree, or 'left | right'")
    transduce.add_argument("--trace", action="store_true", help="print a derivation of every output")

    accept = commands.add_parser("accept", parents=[common], help="acceptance of an input by an r-acceptor")
    accept.add_argument("grammar")
    accept.add_argument("--input", default="")
    accept.add_argument("--finals", help="comma-separated final states; the input is then a word")

    construct_parser = commands.add_parser("construct", parents=[common], help="apply a construction")
    construct_parser.add_argument("name", choices=CONSTRUCTIONS)
    construct_parser.add_argument("grammar")
    construct_parser.add_argument("--mode", help="conversion mode of conv-reg and conv-rt")
    construct_parser.add_argument("--finals", help="comma-separated final states")
    construct_parser.add_argument("--leaves", help="comma-separated leaf symbols of a marked alphabet")
    construct_parser.add_argument("--alphabet", help="ranked alphabet, e.g. 'c:3, a:0, b:0, eps:0'")
    construct_parser.add_argument("--no-prune", action="store_true", help="keep unproductive triples in to-grammar")
    construct_parser.add_argument("--step-bound", type=int, help="look-ahead step bound")

    delta = commands.add_parser("delta", parents=[common], help="δ_Δ(L) or tree_Δ(L) up to a tree size")
    delta.add_argument("grammar", nargs="?", help="grammar of the path language")
    delta.add_argument("--paths", help="file with one path string per line")
    delta.add_argument("--alphabet", required=True, help="ranked alphabet Δ, inline or as a file")
    delta.add_argument("--size-bound", type=int, required=True)
    delta.add_argument("--finals", help="accept the path language by these final states")
    delta.add_argument("--trees", action="store_true", help="print tree_Δ(L) instead of its yields")
    delta.add_argument("--continuity", action="store_true", help="check every item against a finite subset of L")

    witness = commands.add_parser("re-witness", parents=[common], help="linear K with δ_Δ(K) = h(L ∩ M)")
    witness.add_argument("left")
    witness.add_argument("right")
    witness.add_argument("--hom", required=True, help="homomorphism, e.g. 'a=c, b='")
    witness.add_argument("--size-bound", type=int, help="also compare δ_Δ(K) with h(L ∩ M)")

    equiv = commands.add_parser("equiv", parents=[common], help="bounded equality of two languages")
    equiv.add_argument("left")
    equiv.add_argument("right")
    equiv.add_argument("--relation", action="store_true", help="compare transductions input by input")
    return parser


def dispatch(args: argparse.Namespace) -> CommandOutput:
    for flag in ("max_len", "max_steps", "max_forms", "jobs"):
        validate_positive(flag, getattr(args, flag))
    bounds = default_bounds(
        max_len=args.max_len,
        max_steps=args.max_steps,
        max_forms=args.max_forms,
        max_input=args.max_input,
    )
    if args.command == "validate":
        return run_validate(args.grammars, bounds, args.jobs)
    if args.command == "generate":
        return run_generate(args.grammar, bounds, args.progress)
    if args.command == "trees":
        return run_trees(args.grammar, bounds)
    if args.command == "transduce":
        return run_transduce(args.grammar, args.input, bounds, args.trace)
    if args.command == "accept":
        return run_accept(args.grammar, args.input, bounds, _names(args.finals))
    if args.command == "construct":
        options = ConstructOptions(
            mode=args.mode,
            finals=_names(args.finals),
            leaves=_names(args.leaves),
            alphabet=read_alphabet(args.alphabet) if args.alphabet else None,
            prune=not args.no_prune,
            step_bound=validate_positive("step_bound", args.step_bound),
        )
        return construct(args.name, read_grammar(args.grammar), options, bounds)
    if args.command == "delta":
        validate_positive("size_bound", args.size_bound)
        spec = delta_spec(read_alphabet(args.alphabet), args.size_bound, args.grammar, args.paths, _names(args.finals))
        return run_delta(spec, args.trees, args.continuity)
    if args.command == "re-witness":
        validate_positive("size_bound", args.size_bound)
        return run_re_witness(args.left, args.right, args.hom, bounds, args.size_bound)
    return run_equiv(args.left, args.right, bounds, args.relation, args.progress, args.jobs)


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    if args.log_level:
        set_level(args.log_level)
    try:
        output = dispatch(args)
    except ResourceError as error:
        console_log(str(error), "ERROR")
        return EXIT_RESOURCE_ERROR
    except DomainError as error:
        console_log(str(error), "ERROR")
        return EXIT_DOMAIN_ERROR
    except OSError as error:
        console_log(f"{error.filename}: {error.strerror}", "ERROR")
        return EXIT_DOMAIN_ERROR

    if args.format == "json":
        print(export_to_json(output.as_dict()))
    else:
        for line in output.lines:
            print(line)
    return output.exit_code or EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
