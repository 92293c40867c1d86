"""
Bounded Equivalence
Compares bounded languages, tree languages or transductions of two grammars
"""

from typing import Callable, Optional

from tqdm import tqdm

from engine.search import enumerate_inputs, generate, generate_trees, transduce
from grammar.model import Grammar, GrammarClass
from models.errors import PreconditionError, UncertifiedSampleError
from models.responses import EquivResult
from models.schemas import Bounds, LanguageSample
from utils.export import format_item, length_lex_key
from utils.logger import get_logger
from workflows.coordinator import run_checks

logger = get_logger(__name__)


def compare_samples(left: LanguageSample, right: LanguageSample) -> EquivResult:
    """Set comparison below the length both samples are certified for."""
    up_to = min(left.complete_up_to, right.complete_up_to)
    if up_to < 0:
        raise UncertifiedSampleError("neither sample is certified at any length")
    if up_to < max(left.bounds.max_len, right.bounds.max_len):
        logger.warning(f"comparing only up to {up_to}, where both samples are complete")
    ours = left.restricted(up_to)
    theirs = right.restricted(up_to)
    difference = sorted(ours ^ theirs, key=length_lex_key)
    if not difference:
        return EquivResult(equal=True, up_to=up_to)
    witness = difference[0]
    return EquivResult(
        equal=False,
        up_to=up_to,
        witness=format_item(witness),
        only_in="left" if witness in ours else "right",
    )


def _sampler(g: Grammar) -> Callable[[Grammar, Bounds], LanguageSample]:
    return generate_trees if g.grammar_class == GrammarClass.RT else generate


def equiv(left: Grammar, right: Grammar, bounds: Bounds, jobs: Optional[int] = None) -> EquivResult:
    """Equal(up_to) when the bounded languages agree, else Differs with a shortest witness."""
    if (left.grammar_class == GrammarClass.RT) != (right.grammar_class == GrammarClass.RT):
        raise PreconditionError(f"cannot compare a tree language with a string language: {left} vs {right}")
    samples = run_checks(
        {
            "left": lambda: _sampler(left)(left, bounds),
            "right": lambda: _sampler(right)(right, bounds),
        },
        jobs,
    )
    for side in ("left", "right"):
        if samples[side].input_bound is not None:
            logger.warning(f"{side} sample covers inputs of size at most {samples[side].input_bound} only")
    return compare_samples(samples["left"], samples["right"])


def _same_inputs(left: Grammar, right: Grammar) -> None:
    kinds = (left.storage.input_kind(left.encoding), right.storage.input_kind(right.encoding))
    if kinds[0] != kinds[1]:
        raise PreconditionError(
            f"transductions read different inputs ({kinds[0].value} vs {kinds[1].value}): {left} vs {right}"
        )


def equiv_relation(
    left: Grammar,
    right: Grammar,
    bounds: Bounds,
    progress: bool = False,
    jobs: Optional[int] = None,
) -> EquivResult:
    """Compare T(G) input by input, over the inputs of both grammars up to ``max_input``."""
    _same_inputs(left, right)
    inputs = [u for u, _ in enumerate_inputs(left, bounds.max_input)]
    inputs += [u for u, _ in enumerate_inputs(right, bounds.max_input) if u not in inputs]
    up_to = bounds.max_len
    for u in tqdm(inputs, desc="inputs", disable=not progress, leave=False):
        samples = run_checks(
            {
                "left": lambda: transduce(left, u, bounds),
                "right": lambda: transduce(right, u, bounds),
            },
            jobs,
        )
        result = compare_samples(samples["left"], samples["right"])
        up_to = min(up_to, result.up_to)
        if not result.equal:
            return EquivResult(
                equal=False,
                up_to=up_to,
                witness=f"{format_item(u)} ↦ {result.witness}",
                only_in=result.only_in,
                relation=True,
            )
    logger.debug(f"{len(inputs)} inputs agree")
    return EquivResult(equal=True, up_to=up_to, relation=True)

