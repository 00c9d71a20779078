import argparse
import logging
from typing import Optional

from src.cli.dependencies import (
    get_classification_service,
    get_witness_service,
    require_gbs,
    require_graph_of_groups,
)
from src.cli.router import CommandRouter, Flag
from src.core.exceptions import HYPOTHESIS_FAILED, HypothesisFailedError
from src.models.dynamics import RepeatablePath
from src.models.graphs import GraphOfGroups
from src.models.responses import ClassificationReport, HypothesisCheck
from src.services.boundary_service import (
    as_union,
    format_cylinder,
    format_point,
    format_union,
    full_boundary,
    parse_cylinder,
)
from src.services.classification_service import warning
from src.services.document_service import LoadedInstance
from src.services.dynamics_service import as_repeatable, boundary_infinite, find_flagged_repeatable
from src.services.normal_form_service import format_path, format_word, parse_path, parse_loop, reduce

router = CommandRouter(tags=["gbs"])
logger = logging.getLogger(__name__)


def resolve_mu(g: GraphOfGroups, text: Optional[str], base: str) -> RepeatablePath:
    if text:
        return as_repeatable(g, parse_path(g, text, base))
    mu = find_flagged_repeatable(g, base)
    if mu is None:
        raise HypothesisFailedError("repeatable-path", f"no flagged repeatable path at {base}")
    return mu


@router.command("classify-gbs", help="Boundary and C*-algebra verdict for a GBS graph of groups")
def classify_gbs(instance: LoadedInstance, args: argparse.Namespace) -> ClassificationReport:
    g = require_gbs(instance, "classify-gbs")
    return get_classification_service().classify_gbs(g, instance.base, instance.instance)


@router.command("classify-tree", help="Strong boundary verdict for any non-singular graph of groups")
def classify_tree(instance: LoadedInstance, args: argparse.Namespace) -> ClassificationReport:
    g = require_graph_of_groups(instance)
    return get_classification_service().classify_tree(g, instance.base, instance.instance)


@router.command(
    "witness-2filling",
    help="Search and verify a 2-filling witness for two target cylinders",
    flags=(
        Flag("--o1", required=True),
        Flag("--o2", required=True),
        Flag("--bound", type=int, default=None, minimum=1),
        Flag("--mu", default=None),
    ),
)
def witness_2filling(instance: LoadedInstance, args: argparse.Namespace) -> ClassificationReport:
    g = require_graph_of_groups(instance)
    mu = resolve_mu(g, args.mu, instance.base)
    o1 = parse_cylinder(g, args.o1, instance.base)
    o2 = parse_cylinder(g, args.o2, instance.base)
    witness = get_witness_service().construct_filling_witness(g, mu, o1, o2, args.bound)
    report = ClassificationReport(
        instance=instance.instance,
        command="witness-2filling",
        hypotheses=[
            HypothesisCheck(name="minimal", value=True),
            HypothesisCheck(name="repeatable-path", value=True, certificate=format_path(g, mu.letters)),
        ],
        results=[
            f"m = {witness.power}",
            f"t = {g.backend.format_token(mu.base, witness.t)}",
            f"h1 = {format_word(g, witness.elements[0])}",
            f"h2 = {format_word(g, witness.elements[1])}",
            f"A = {format_union(g, witness.part_a)}",
            f"B = {format_union(g, witness.part_b)}",
        ],
    )
    report.certificates["gammas"] = [format_word(g, gamma) for gamma in witness.gammas]
    report.certificates["targets"] = [format_cylinder(g, o) for o in witness.targets]
    report.certificates["candidates_examined"] = witness.candidates_examined
    return report


@router.command(
    "subequivalence",
    help="Build and check a cylinder-level subequivalence witness",
    flags=(
        Flag("--source", default=""),
        Flag("--target", required=True),
        Flag("--bound", type=int, default=None, minimum=1),
        Flag("--mu", default=None),
        Flag("--paradoxical", switch=True, help="Split the target in two and witness both halves"),
    ),
)
def subequivalence(instance: LoadedInstance, args: argparse.Namespace) -> ClassificationReport:
    g = require_graph_of_groups(instance)
    service = get_witness_service()
    mu = resolve_mu(g, args.mu, instance.base)
    source = as_union(g, parse_cylinder(g, args.source, instance.base))
    target = as_union(g, parse_cylinder(g, args.target, instance.base))
    report = ClassificationReport(instance=instance.instance, command="subequivalence")
    if args.paradoxical:
        witness = service.construct_paradoxical_witness(g, mu, source, target, args.bound)
        check = service.verify_paradoxical(g, witness)
        parts = [witness.first, witness.second]
    else:
        single = service.construct_subequivalence_witness(g, mu, source, target, args.bound)
        check = service.verify_subequivalence(g, single)
        parts = [single]
    for index, part in enumerate(parts, start=1):
        report.results.append(f"target {index}: {format_union(g, part.target)}")
        for piece, element in part.pieces:
            report.results.append(f"  {format_cylinder(g, piece)} -> {format_word(g, element)}")
    report.hypotheses.append(
        HypothesisCheck(
            name="subequivalence-verified",
            value=check.valid,
            certificate=(
                None if check.valid else f"{check.failure} at {format_cylinder(g, check.locus)}"
            ),
        )
    )
    if not check.valid:
        report.exit_code = HYPOTHESIS_FAILED
    return report


@router.command(
    "northsouth",
    help="Check north-south dynamics of a repeatable loop on cylinder neighbourhoods",
    flags=(
        Flag("--element", required=True),
        Flag("--depth", type=int, default=None, minimum=0),
        Flag("--bound", type=int, default=None, minimum=1),
    ),
)
def northsouth(instance: LoadedInstance, args: argparse.Namespace) -> ClassificationReport:
    g = require_graph_of_groups(instance)
    gamma = reduce(g, parse_loop(g, args.element, instance.base))
    if not g.backend.is_identity(gamma.source, gamma.tail):
        raise HypothesisFailedError("repeatable-path", "element has a non-identity tail")
    mu = as_repeatable(g, gamma.letters)
    verdict = get_witness_service().verify_north_south(g, mu, args.depth, args.bound)
    report = ClassificationReport(
        instance=instance.instance,
        command="northsouth",
        hypotheses=[HypothesisCheck(name="north-south", value=True, certificate=f"m = {verdict.power}")],
        results=[
            f"m = {verdict.power}",
            f"U = {format_cylinder(g, verdict.attracting)}",
            f"V = {format_cylinder(g, verdict.repelling)}",
            f"attracting: {format_point(g, verdict.attracting_point)}",
        ],
    )
    if verdict.repelling_point is not None:
        report.results.append(f"repelling: {format_point(g, verdict.repelling_point)}")
    report.warnings.append(warning("W-EVENTUALLY-PERIODIC"))
    if not boundary_infinite(g, instance.base).infinite:
        report.warnings.append(warning("W-FINITE-BOUNDARY"))
    return report
