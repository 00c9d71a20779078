import logging
from typing import Optional

from src.core.exceptions import HYPOTHESIS_FAILED, NotGBSError
from src.models.defining import FactorDecomposition, FactorTag
from src.models.graphs import DefiningGraph, DefiningKind, GraphOfGroups, GroupKind
from src.models.responses import ClassificationReport, HypothesisCheck, ReportWarning, Verdict
from src.services.boundary_service import format_point
from src.services.defining_graph_service import (
    doubling_embedding,
    irreducible_factors,
    is_essential,
    is_join,
)
from src.services.dynamics_service import (
    boundary_infinite,
    check_minimality,
    check_unimodular,
    find_flagged_repeatable,
)
from src.services.normal_form_service import format_path, format_word
from src.utils.helpers import TextFormatter
from src.utils.templates import STRUCTURE_TEMPLATES, VERDICT_TEMPLATES, WARNING_TEMPLATES

logger = logging.getLogger(__name__)


def verdict(name: str, **fields: str) -> Verdict:
    template = VERDICT_TEMPLATES[name]
    return Verdict(
        text=template["text"].format(**fields),
        keys=list(template["keys"]),
        citations=list(template["citations"]),
    )


def warning(code: str, **fields: str) -> ReportWarning:
    return ReportWarning(code=code, message=WARNING_TEMPLATES[code].format(**fields))


class ClassificationService:
    """Evaluates classification hypotheses and maps them onto verdicts."""

    def tree_hypotheses(
        self, g: GraphOfGroups, base: str, report: ClassificationReport
    ) -> bool:
        """Hypotheses shared by every tree verdict; returns whether all hold."""
        cardinality = boundary_infinite(g, base)
        report.hypotheses.append(
            HypothesisCheck(
                name="boundary-infinite",
                value=cardinality.infinite,
                certificate=(
                    f"branches at {cardinality.branching_state} on cycle {' '.join(cardinality.cycle)}"
                    if cardinality.infinite
                    else f"no branching turn-graph cycle is reachable from {base}"
                ),
            )
        )

        minimality = check_minimality(g)
        certificate = "minimal"
        if not minimality.minimal:
            certificate = (
                f"{' '.join(minimality.trapped_cycle)} avoids the flow of {minimality.offending_edge}; "
                f"witness {format_point(g, minimality.witness)}"
            )
            report.warnings.append(warning("W-EVENTUALLY-PERIODIC"))
        report.hypotheses.append(
            HypothesisCheck(name="minimal", value=minimality.minimal, certificate=certificate)
        )

        mu = find_flagged_repeatable(g, base) or find_flagged_repeatable(g)
        report.hypotheses.append(
            HypothesisCheck(
                name="repeatable-path",
                value=mu is not None,
                certificate=format_path(g, mu.letters) if mu else "no flagged repeatable path",
            )
        )
        return cardinality.infinite and minimality.minimal and mu is not None

    def _singular(self, g: GraphOfGroups, report: ClassificationReport) -> ClassificationReport:
        report.hypotheses.append(
            HypothesisCheck(name="non-singular", value=False, certificate=", ".join(g.singular_edges))
        )
        report.warnings.append(warning("W-SINGULAR", edges=", ".join(g.singular_edges)))
        report.exit_code = HYPOTHESIS_FAILED
        return report

    def classify_gbs(self, g: GraphOfGroups, base: str, instance: str = "") -> ClassificationReport:
        if g.kind != GroupKind.GBS:
            raise NotGBSError("classify-gbs")
        report = ClassificationReport(instance=instance, command="classify-gbs")
        if not g.non_singular:
            return self._singular(g, report)
        tree = self.tree_hypotheses(g, base, report)

        unimodularity = check_unimodular(g)
        offending = unimodularity.offending
        report.hypotheses.append(
            HypothesisCheck(
                name="not-unimodular",
                value=not unimodularity.unimodular,
                certificate=(
                    f"q({format_word(g, offending.loop)}) = {TextFormatter.fraction(offending.q)}"
                    if offending
                    else "|q| = 1 on every basis cycle"
                ),
            )
        )
        for cycle in unimodularity.cycles:
            report.results.append(f"q({format_word(g, cycle.loop)}) = {TextFormatter.fraction(cycle.q)}")
        if unimodularity.cycles:
            reciprocals = ", ".join(TextFormatter.fraction(1 / c.q) for c in unimodularity.cycles)
            report.warnings.append(warning("W-Q-ORIENTATION", reciprocals=reciprocals))
        if g.is_baumslag_solitar:
            report.warnings.append(warning("W-UNIMOD-TYPO"))

        if tree and not unimodularity.unimodular:
            report.verdict = verdict("gbs-kirchberg")
        elif tree:
            report.verdict = verdict("gbs-unimodular")
            report.exit_code = HYPOTHESIS_FAILED
        else:
            report.exit_code = HYPOTHESIS_FAILED
        logger.info(f"classify-gbs {instance}: failed {report.failed_hypotheses}")
        return report

    def free_product_orders(self, g: GraphOfGroups) -> Optional[tuple[int, int]]:
        """(|G|, |F|) when ``g`` is a single edge of trivial group between two vertices."""
        edges = g.graph.geometric_edges
        if g.kind != GroupKind.TRIVIAL_EDGE or len(g.graph.vertices) != 2 or len(edges) != 1:
            return None
        edge = edges[0]
        if edge.source == edge.range:
            return None
        return g.index(edge.name), g.index(edge.partner)

    def classify_tree(self, g: GraphOfGroups, base: str, instance: str = "") -> ClassificationReport:
        report = ClassificationReport(instance=instance, command="classify-tree")
        if not g.non_singular:
            return self._singular(g, report)
        report.hypotheses.append(
            HypothesisCheck(name="amenable-edge-groups", value=True, certificate=g.kind.value)
        )
        if not self.tree_hypotheses(g, base, report):
            report.exit_code = HYPOTHESIS_FAILED
            return report
        orders = self.free_product_orders(g)
        if orders is not None and (orders[0] - 1) * (orders[1] - 1) >= 2:
            report.results.append(f"free product of orders {orders[0]} and {orders[1]}")
            report.verdict = verdict("tree-free-product")
        else:
            report.verdict = verdict("tree-strong-boundary")
        return report

    def structure_string(self, decomposition: FactorDecomposition) -> str:
        n = decomposition.euclidean_count
        parts = []
        if decomposition.residual.vertices:
            parts.append(STRUCTURE_TEMPLATES["residual"].format())
        if decomposition.kind == DefiningKind.RACG:
            prefix = "" if n == 1 else "⊗" + TextFormatter.superscript(n)
            parts.append(STRUCTURE_TEMPLATES["racg-euclidean"].format(power=prefix))
        else:
            parts.append(STRUCTURE_TEMPLATES["raag-euclidean"].format(power=TextFormatter.power(n)))
        return " ⊗ ".join(parts)

    def classify_nevo_sageev(
        self, graph: DefiningGraph, kind: DefiningKind, instance: str = ""
    ) -> ClassificationReport:
        report = ClassificationReport(instance=instance, command="classify-nevo-sageev")
        decomposition = irreducible_factors(graph, kind)
        for factor in decomposition.factors:
            report.results.append(
                f"factor {TextFormatter.vertex_set(factor.graph.vertices)}: {factor.tag.value}"
            )
        essential = is_essential(graph, kind)
        blockers = [f for f in decomposition.factors if f.tag == FactorTag.Z2]
        report.hypotheses.append(
            HypothesisCheck(
                name="essential",
                value=essential,
                certificate=(
                    "no universal vertex"
                    if essential
                    else "universal vertex " + ", ".join(v for f in blockers for v in f.graph.vertices)
                ),
            )
        )
        non_euclidean = len(decomposition.non_euclidean)
        n = decomposition.euclidean_count
        report.hypotheses.append(HypothesisCheck(name="non-euclidean-factors", value=str(non_euclidean)))
        report.hypotheses.append(HypothesisCheck(name="euclidean-factors", value=str(n)))
        report.certificates["residual"] = list(decomposition.residual.vertices)

        if not essential:
            report.verdict = verdict("not-essential")
            report.exit_code = HYPOTHESIS_FAILED
            return report
        if n == 0:
            report.verdict = verdict(f"{kind.value}-simple")
            return report
        structure = self.structure_string(decomposition)
        report.results.append(f"structure: {structure}")
        report.verdict = verdict(f"{kind.value}-structure", structure=structure)
        if not decomposition.residual.vertices:
            report.warnings.append(warning("W-DEGENERATE-GAMMA-PRIME"))
        return report

    def classify_visual(
        self, graph: DefiningGraph, kind: DefiningKind, instance: str = ""
    ) -> ClassificationReport:
        report = ClassificationReport(instance=instance, command="classify-visual")
        join_free = not is_join(graph)
        report.hypotheses.append(
            HypothesisCheck(
                name="join-free",
                value=join_free,
                certificate=f"{len(irreducible_factors(graph, kind).factors)} irreducible factor(s)",
            )
        )
        needed = 3 if kind == DefiningKind.RACG else 2
        count = len(graph.vertices)
        report.hypotheses.append(
            HypothesisCheck(name="vertex-count", value=count >= needed, certificate=f"|V| = {count}, needs ≥ {needed}")
        )
        if not (join_free and count >= needed):
            report.exit_code = HYPOTHESIS_FAILED
            return report
        if kind == DefiningKind.RAAG:
            doubled = doubling_embedding(graph)
            report.certificates["doubling"] = f"join-free on {len(doubled.vertices)} vertices"
        report.verdict = verdict(f"visual-{kind.value}")
        return report


classification_service = ClassificationService()
