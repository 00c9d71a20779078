import logging

from src.core.exceptions import FlagError
from src.models.responses import ClassificationReport

logger = logging.getLogger(__name__)

FORMATS = ("text", "json")


def _text(report: ClassificationReport) -> str:
    lines = list(report.results)
    if report.hypotheses:
        lines.append("hypotheses:")
        for check in report.hypotheses:
            value = check.value if isinstance(check.value, str) else str(check.value).lower()
            line = f"  {check.name}: {value}"
            if check.certificate:
                line += f" ({check.certificate})"
            lines.append(line)
    if report.verdict is not None:
        lines.append(f"verdict: {report.verdict.text}")
        if report.verdict.keys:
            lines.append(f"  keys: {', '.join(report.verdict.keys)}")
        if report.verdict.citations:
            lines.append(f"  cites: {', '.join(report.verdict.citations)}")
    if report.warnings:
        lines.append("warnings:")
        lines.extend(f"  {w.code}: {w.message}" for w in report.warnings)
    if report.error is not None:
        where = f" at {report.error.locus}" if report.error.locus else ""
        lines.append(f"error [{report.error.code}]{where}: {report.error.message}")
    return "\n".join(lines) + "\n"


def emit_report(report: ClassificationReport, output_format: str = "text") -> str:
    if output_format == "json":
        return report.model_dump_json(indent=2) + "\n"
    if output_format == "text":
        return _text(report)
    raise FlagError(f"Unknown output format '{output_format}'", locus="--format")


def parse_report(text: str) -> ClassificationReport:
    return ClassificationReport.model_validate_json(text)
