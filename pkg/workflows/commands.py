"""
Command Implementations
Each command returns printable lines plus a machine-readable record
"""

from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

from config.constants import EXIT_DOMAIN_ERROR, EXIT_OK
from constructions.acceptance import (
    RegConversion,
    RtConversion,
    convert_acceptance_reg,
    convert_acceptance_rt,
    mark_grammar,
)
from constructions.lookahead import determinize_pf, determinize_via_lookahead
from constructions.pushdown import collapse_ext, to_grammar, to_pushdown_automaton
from constructions.trees import derivation_tree_acceptor, path_acceptor, tree_acceptor_from_paths, yield_grammar
from delta.operations import DeltaSpec, continuity_check, delta, tree_delta
from delta.paths import PathAlphabet, read_path_file
from delta.witness import homomorphism_from_pairs, image_of_intersection, re_witness
from engine.acceptance import accept_final_state, d_accept
from engine.search import find_derivation, generate, generate_trees, transduce
from grammar.model import Grammar
from grammar.normal_forms import normalize_cfext
from grammar.printer import format_grammar
from grammar.validate import validate
from models.errors import PreconditionError, ValidationError
from models.schemas import Bounds, LanguageSample
from models.state import CommandRecord
from utils.export import format_item, sort_length_lex
from utils.logger import get_logger
from utils.parsers import load_grammar, parse_alphabet, parse_input, parse_word
from utils.validators import validate_construction, validate_finals, validate_grammar_file
from workflows.coordinator import run_checks
from workflows.equivalence import equiv, equiv_relation

logger = get_logger(__name__)


@dataclass
class CommandOutput:
    command: str
    lines: List[str] = field(default_factory=list)
    record: Dict[str, Any] = field(default_factory=dict)
    exit_code: int = 0

    def as_dict(self) -> CommandRecord:
        return CommandRecord(command=self.command, **self.record)


def read_grammar(path: str) -> Grammar:
    return load_grammar(validate_grammar_file(path))


def sample_output(command: str, sample: LanguageSample) -> CommandOutput:
    items = [format_item(item) for item in sample.sorted_items()]
    lines = list(items)
    if not sample.complete:
        lines.append(f"# complete up to {sample.complete_up_to} (bound {sample.bounds.max_len})")
    if sample.input_bound is not None:
        lines.append(f"# inputs of size at most {sample.input_bound}")
    lines.extend(f"# {note}" for note in sample.notes)
    return CommandOutput(command, lines, sample.as_dict())


# ============================================================================
# ENGINE COMMANDS
# ============================================================================

def run_validate(paths: Sequence[str], bounds: Bounds, jobs: Optional[int] = None) -> CommandOutput:
    grammars = {path: read_grammar(path) for path in paths}
    reports = run_checks({path: (lambda g=g: validate(g, bounds)) for path, g in grammars.items()}, jobs)
    lines: List[str] = []
    for path, report in reports.items():
        status = "ok" if report.consistent else "INVALID"
        lines.append(f"{path}: {status}; declared {report.declared}, strongest {report.strongest}")
        if report.deterministic is not None:
            lines.append(f"  deterministic: {report.deterministic.verdict.value}")
        if report.racceptor_deterministic is not None:
            lines.append(f"  r-acceptor deterministic: {'yes' if report.racceptor_deterministic else 'no'}")
        lines.extend(f"  problem: {problem}" for problem in report.problems)
        lines.extend(f"  note: {note}" for note in report.notes)
    invalid = any(not report.consistent for report in reports.values())
    record = {"result": {path: report.model_dump() for path, report in reports.items()}}
    return CommandOutput("validate", lines, record, exit_code=EXIT_DOMAIN_ERROR if invalid else EXIT_OK)


def run_generate(path: str, bounds: Bounds, progress: bool = False) -> CommandOutput:
    return sample_output("generate", generate(read_grammar(path), bounds, progress=progress))


def run_trees(path: str, bounds: Bounds) -> CommandOutput:
    return sample_output("trees", generate_trees(read_grammar(path), bounds))


def run_transduce(path: str, text: str, bounds: Bounds, trace: bool = False) -> CommandOutput:
    g = read_grammar(path)
    u = parse_input(text, g.storage, g.encoding)
    sample = transduce(g, u, bounds)
    output = sample_output("transduce", sample)
    output.record["input"] = format_item(u)
    if trace:
        traces = {}
        for item in sample.sorted_items():
            found = find_derivation(g, u, item, bounds)
            if found is not None:
                traces[format_item(item)] = found.render()
                output.lines.append(f"# derivation of {format_item(item)}")
                output.lines.extend(found.render().splitlines())
        output.record["traces"] = traces
    return output


def run_accept(path: str, text: str, bounds: Bounds, finals: Optional[Sequence[str]] = None) -> CommandOutput:
    g = read_grammar(path)
    if finals:
        finals = validate_finals(finals, g.nonterminals)
        word = parse_word(text)
        verdict = "Accepted" if accept_final_state(g, finals, word) else "Rejected"
        return CommandOutput("accept", [verdict], {"result": verdict, "finals": sorted(finals)})
    u = parse_input(text, g.storage, g.encoding)
    outcome = d_accept(g, u, bounds)
    return CommandOutput("accept", [outcome.value], {"result": outcome.value, "bounds": bounds.model_dump()})


def run_equiv(left: str, right: str, bounds: Bounds, relation: bool = False, progress: bool = False, jobs: Optional[int] = None) -> CommandOutput:
    a, b = read_grammar(left), read_grammar(right)
    result = equiv_relation(a, b, bounds, progress, jobs) if relation else equiv(a, b, bounds, jobs)
    return CommandOutput("equiv", [result.summary()], {"result": result.model_dump(), "bounds": bounds.model_dump()})


# ============================================================================
# CONSTRUCTIONS
# ============================================================================

@dataclass
class ConstructOptions:
    mode: Optional[str] = None
    finals: Optional[List[str]] = None
    leaves: Optional[List[str]] = None
    alphabet: Optional[Dict[str, int]] = None
    prune: bool = True
    step_bound: Optional[int] = None


def _need(value, flag: str, name: str):
    if value is None:
        raise PreconditionError(f"construction '{name}' needs {flag}", construction=name)
    return value


def _mode(kind, value: Optional[str], name: str):
    value = _need(value, "--mode", name)
    try:
        return kind(value)
    except ValueError:
        choices = ", ".join(member.value for member in kind)
        raise ValidationError(f"unknown mode '{value}' for {name}; expected one of {choices}") from None


def construct(name: str, g: Grammar, options: ConstructOptions, bounds: Bounds) -> CommandOutput:
    """Run one named construction; the result is printed in the grammar text format."""
    name = validate_construction(name)
    finals: List[str] = []
    notes: List[str] = []
    if name == "to-pda":
        result = to_pushdown_automaton(normalize_cfext(g))
    elif name == "to-grammar":
        result = to_grammar(g, prune=options.prune)
    elif name == "collapse-ext":
        result = collapse_ext(g)
    elif name == "det-la":
        result = determinize_via_lookahead(g, options.step_bound)
    elif name == "det-pf":
        result = determinize_pf(g, options.step_bound)
    elif name == "conv-reg":
        mode = _mode(RegConversion, options.mode, name)
        converted = convert_acceptance_reg(g, mode, options.finals, bounds)
        result, finals, notes = converted.grammar, sorted(converted.finals), converted.notes
    elif name == "conv-rt":
        mode = _mode(RtConversion, options.mode, name)
        result = convert_acceptance_rt(g, mode, options.leaves, options.step_bound)
    elif name == "deriv-trees":
        result = derivation_tree_acceptor(g)
    elif name == "yield-grammar":
        result = yield_grammar(g)
    elif name == "path-acceptor":
        result = path_acceptor(g, _need(options.leaves, "--leaves", name))
    elif name == "tree-acceptor":
        result = tree_acceptor_from_paths(g, _need(options.finals, "--finals", name), _need(options.alphabet, "--alphabet", name))
    else:
        result = mark_grammar(g)
    text = format_grammar(result)
    lines = text.rstrip("\n").splitlines()
    if finals:
        lines.append(f"# finals {', '.join(finals)}")
    lines.extend(f"# {note}" for note in notes)
    logger.debug(f"{name}: {g} -> {result} with {len(result.rules)} rules")
    return CommandOutput(
        "construct",
        lines,
        {"construction": name, "result": text, "finals": finals, "notes": notes},
    )


# ============================================================================
# DELTA
# ============================================================================

def read_alphabet(text: str) -> Dict[str, int]:
    """An ``alphabet ...;`` declaration given inline or as a file name."""
    if Path(text).is_file():
        text = Path(text).read_text(encoding="utf-8")
    text = text.strip()
    if not text.startswith("alphabet"):
        text = f"alphabet {text}"
    if not text.endswith(";"):
        text += ";"
    return parse_alphabet(text)


def delta_spec(
    alphabet: Dict[str, int],
    size_bound: int,
    grammar_path: Optional[str] = None,
    paths_file: Optional[str] = None,
    finals: Optional[Sequence[str]] = None,
) -> DeltaSpec:
    if (grammar_path is None) == (paths_file is None):
        raise ValidationError("give either a grammar file or --paths, not both")
    if paths_file is not None:
        text = Path(paths_file).read_text(encoding="utf-8")
        return DeltaSpec.of_paths(alphabet, read_path_file(text, PathAlphabet.of(alphabet)), size_bound)
    return DeltaSpec.of_grammar(alphabet, read_grammar(grammar_path), size_bound, finals or None)


def run_delta(spec: DeltaSpec, trees: bool = False, continuity: bool = False) -> CommandOutput:
    forest = tree_delta(spec)
    if trees:
        output = sample_output("delta", forest)
    else:
        output = sample_output("delta", delta(spec, forest))
    output.record["size_bound"] = spec.size_bound
    if continuity:
        report = continuity_check(spec)
        output.lines.append(f"# continuity {'holds' if report.holds else 'FAILS'} on {report.items_checked} items")
        output.record["continuity"] = report.model_dump()
    return output


def parse_homomorphism(text: str) -> Dict[str, tuple]:
    """``a=c, b=`` or ``a=c d; b=λ``: one image per letter, empty for λ."""
    pairs = []
    for part in text.replace(";", ",").split(","):
        if not part.strip():
            continue
        letter, equals, image = part.partition("=")
        if not equals or not letter.strip():
            raise ValidationError(f"'{part.strip()}' is not of the form letter=image")
        pairs.append((letter.strip(), parse_word(image)))
    return homomorphism_from_pairs(pairs)


def run_re_witness(left: str, right: str, hom: str, bounds: Bounds, size_bound: Optional[int] = None) -> CommandOutput:
    a, b = read_grammar(left), read_grammar(right)
    h = parse_homomorphism(hom)
    witness = re_witness(a, b, h)
    declaration = ", ".join(f"{symbol}:{rank}" for symbol, rank in witness.ranks)
    lines = format_grammar(witness.grammar).rstrip("\n").splitlines()
    lines.append(f"# alphabet {declaration};")
    record: Dict[str, Any] = {"result": format_grammar(witness.grammar), "alphabet": dict(witness.ranks)}
    if size_bound is not None:
        produced = delta(witness.spec(size_bound)).items
        expected = image_of_intersection(a, b, h, bounds).items
        lines.append(f"# delta: {', '.join(format_item(w) for w in sort_length_lex(produced))}")
        lines.append(f"# h(L ∩ M): {', '.join(format_item(w) for w in sort_length_lex(expected))}")
        record["delta"] = sorted(format_item(w) for w in produced)
        record["image"] = sorted(format_item(w) for w in expected)
    return CommandOutput("re-witness", lines, record)


__all__ = [
    "CommandOutput",
    "ConstructOptions",
    "construct",
    "delta_spec",
    "parse_homomorphism",
    "read_alphabet",
    "read_grammar",
    "run_accept",
    "run_delta",
    "run_equiv",
    "run_generate",
    "run_re_witness",
    "run_transduce",
    "run_trees",
    "run_validate",
]
