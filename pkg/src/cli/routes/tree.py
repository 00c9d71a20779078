import argparse
import logging

from src.cli.dependencies import require_gbs, require_graph_of_groups
from src.cli.router import CommandRouter, Flag
from src.core.config import settings
from src.core.exceptions import HYPOTHESIS_FAILED
from src.models.responses import ClassificationReport, HypothesisCheck
from src.services.boundary_service import enumerate_level, format_point
from src.services.classification_service import warning
from src.services.document_service import LoadedInstance
from src.services.dynamics_service import (
    boundary_infinite,
    check_minimality,
    check_unimodular,
    find_repeatable,
    level_sizes,
)
from src.services.graph_service import first_betti_number
from src.services.normal_form_service import format_path, format_word
from src.utils.helpers import TextFormatter

router = CommandRouter(tags=["tree"])
logger = logging.getLogger(__name__)


@router.command(
    "tree",
    help="Reduced paths of a given length from the base vertex",
    flags=(Flag("--depth", type=int, default=1, minimum=0),),
)
def tree(instance: LoadedInstance, args: argparse.Namespace) -> ClassificationReport:
    g = require_graph_of_groups(instance)
    level = enumerate_level(g, instance.base, args.depth)
    results = [f"depth {args.depth}: {len(level)} paths"]
    results.extend(format_path(g, path) or "∅" for path in level.paths)
    return ClassificationReport(instance=instance.instance, command="tree", results=results)


@router.command("boundary-infinite", help="Whether the boundary at the base vertex is infinite")
def infinite(instance: LoadedInstance, args: argparse.Namespace) -> ClassificationReport:
    g = require_graph_of_groups(instance)
    verdict = boundary_infinite(g, instance.base)
    sizes = level_sizes(g, instance.base, 2 * len(g.graph.edges) + 2)
    report = ClassificationReport(
        instance=instance.instance,
        command="boundary-infinite",
        hypotheses=[
            HypothesisCheck(
                name="boundary-infinite",
                value=verdict.infinite,
                certificate=f"branching at {verdict.branching_state}" if verdict.infinite else None,
            )
        ],
        results=[f"level sizes: {' '.join(str(n) for n in sizes)}"],
    )
    if not verdict.infinite:
        report.exit_code = HYPOTHESIS_FAILED
    return report


@router.command("minimality", help="Decide minimality of the boundary action")
def minimality(instance: LoadedInstance, args: argparse.Namespace) -> ClassificationReport:
    g = require_graph_of_groups(instance)
    verdict = check_minimality(g)
    report = ClassificationReport(instance=instance.instance, command="minimality")
    report.certificates["can_flow_to"] = {e: list(states) for e, states in verdict.can_flow_to.items()}
    if verdict.minimal:
        report.hypotheses.append(HypothesisCheck(name="minimal", value=True, certificate="minimal"))
        return report
    report.hypotheses.append(
        HypothesisCheck(
            name="minimal",
            value=False,
            certificate=f"{verdict.offending_edge} is unreachable from cycle {' '.join(verdict.trapped_cycle)}",
        )
    )
    report.results.append(f"witness: {format_point(g, verdict.witness)}")
    report.warnings.append(warning("W-EVENTUALLY-PERIODIC"))
    report.exit_code = HYPOTHESIS_FAILED
    return report


@router.command(
    "repeatable",
    help="Repeatable paths up to a length, flagged when the last reverse index is at least 2",
    flags=(Flag("--max-len", type=int, default=None, minimum=1),),
)
def repeatable(instance: LoadedInstance, args: argparse.Namespace) -> ClassificationReport:
    g = require_graph_of_groups(instance)
    max_len = args.max_len if args.max_len is not None else settings.repeatable_max_len
    paths = find_repeatable(g, max_len, instance.base)
    report = ClassificationReport(
        instance=instance.instance,
        command="repeatable",
        results=[f"{format_path(g, mu.letters)}{' *' if mu.flagged else ''}" for mu in paths],
    )
    flagged = any(mu.flagged for mu in paths)
    report.hypotheses.append(HypothesisCheck(name="repeatable-path", value=flagged))
    if not flagged:
        report.exit_code = HYPOTHESIS_FAILED
    return report


@router.command("betti", help="First Betti number of the underlying graph")
def betti(instance: LoadedInstance, args: argparse.Namespace) -> ClassificationReport:
    g = require_graph_of_groups(instance)
    b = first_betti_number(g.graph)
    results = [f"b1 = {b}"]
    if b != 1:
        results.append("not the graph of a non-degenerate Baumslag-Solitar group")
    return ClassificationReport(instance=instance.instance, command="betti", results=results)


@router.command("unimodular", help="Modular values on a cycle basis of a GBS graph")
def unimodular(instance: LoadedInstance, args: argparse.Namespace) -> ClassificationReport:
    g = require_gbs(instance, "unimodular")
    verdict = check_unimodular(g)
    report = ClassificationReport(
        instance=instance.instance,
        command="unimodular",
        hypotheses=[HypothesisCheck(name="unimodular", value=verdict.unimodular)],
        results=[
            f"q({format_word(g, cycle.loop)}) = {TextFormatter.fraction(cycle.q)}" for cycle in verdict.cycles
        ],
    )
    if verdict.cycles:
        reciprocals = ", ".join(TextFormatter.fraction(1 / c.q) for c in verdict.cycles)
        report.warnings.append(warning("W-Q-ORIENTATION", reciprocals=reciprocals))
    if g.is_baumslag_solitar:
        report.warnings.append(warning("W-UNIMOD-TYPO"))
    if not verdict.unimodular:
        report.exit_code = HYPOTHESIS_FAILED
    return report
