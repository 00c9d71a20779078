import argparse
import logging

from src.cli.dependencies import require_graph_of_groups
from src.cli.router import CommandRouter, Flag
from src.models.responses import ClassificationReport
from src.services.boundary_service import (
    act_on_point,
    format_point,
    format_union,
    image_of_cylinder,
    parse_cylinder,
    parse_point,
)
from src.services.classification_service import warning
from src.services.document_service import LoadedInstance
from src.services.normal_form_service import (
    format_word,
    invert,
    modular_value,
    multiply,
    parse_loop,
    parse_word,
    reduce,
)
from src.utils.helpers import TextFormatter

router = CommandRouter(tags=["words"])
logger = logging.getLogger(__name__)


@router.command("reduce", help="Normal form of a 𝒢-word", flags=(Flag("--word", required=True),))
def reduce_word(instance: LoadedInstance, args: argparse.Namespace) -> ClassificationReport:
    g = require_graph_of_groups(instance)
    reduced = reduce(g, parse_word(g, args.word, instance.base))
    return ClassificationReport(instance=instance.instance, command="reduce", results=[format_word(g, reduced)])


@router.command(
    "multiply",
    help="Product of two composable words, in normal form",
    flags=(Flag("--left", required=True), Flag("--right", required=True)),
)
def multiply_words(instance: LoadedInstance, args: argparse.Namespace) -> ClassificationReport:
    g = require_graph_of_groups(instance)
    left = parse_word(g, args.left, instance.base)
    right = parse_word(g, args.right, left.source)
    product = multiply(g, left, right)
    return ClassificationReport(instance=instance.instance, command="multiply", results=[format_word(g, product)])


@router.command("invert", help="Inverse of a word, in normal form", flags=(Flag("--word", required=True),))
def invert_word(instance: LoadedInstance, args: argparse.Namespace) -> ClassificationReport:
    g = require_graph_of_groups(instance)
    inverse = invert(g, parse_word(g, args.word, instance.base))
    return ClassificationReport(instance=instance.instance, command="invert", results=[format_word(g, inverse)])


@router.command("modular", help="Modular value q of a GBS word", flags=(Flag("--word", required=True),))
def modular(instance: LoadedInstance, args: argparse.Namespace) -> ClassificationReport:
    g = require_graph_of_groups(instance)
    q = modular_value(g, parse_word(g, args.word, instance.base))
    return ClassificationReport(
        instance=instance.instance, command="modular", results=[TextFormatter.fraction(q)]
    )


@router.command(
    "act",
    help="Image of an eventually periodic boundary point under a loop",
    flags=(Flag("--element", required=True), Flag("--point", required=True)),
)
def act(instance: LoadedInstance, args: argparse.Namespace) -> ClassificationReport:
    g = require_graph_of_groups(instance)
    gamma = parse_loop(g, args.element, instance.base)
    point = parse_point(g, args.point, instance.base)
    image = act_on_point(g, gamma, point)
    return ClassificationReport(
        instance=instance.instance,
        command="act",
        results=[format_point(g, image)],
        warnings=[warning("W-EVENTUALLY-PERIODIC")],
    )


@router.command(
    "image",
    help="Image of a cylinder under a loop, as a normalized cylinder union",
    flags=(Flag("--element", required=True), Flag("--cylinder", default="")),
)
def image(instance: LoadedInstance, args: argparse.Namespace) -> ClassificationReport:
    g = require_graph_of_groups(instance)
    gamma = parse_loop(g, args.element, instance.base)
    cylinder = parse_cylinder(g, args.cylinder, instance.base)
    result = image_of_cylinder(g, gamma, cylinder)
    logger.debug(f"Image has {len(result)} cylinders")
    return ClassificationReport(instance=instance.instance, command="image", results=[format_union(g, result)])
