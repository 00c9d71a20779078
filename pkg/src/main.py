import logging
import sys
from pathlib import Path
from typing import Optional, Sequence, TextIO

from src.cli.router import build_parser
from src.cli.routes import registry
from src.core.config import settings
from src.core.exceptions import FlagError, InconclusiveException, SchemaError, ToolkitException, UnknownCommandError
from src.models.responses import ClassificationReport, ReportError
from src.services.classification_service import warning
from src.services.document_service import parse_input
from src.services.report_service import emit_report
from src.utils.logger import configure_logging

logger = logging.getLogger(__name__)

USAGE = "bsdyn <command> <document|-> [flags] [--format text|json] [--base VERTEX]"


def read_document(source: str, stdin: TextIO) -> str:
    if source == "-":
        return stdin.read()
    try:
        return Path(source).read_text(encoding="utf-8")
    except OSError as e:
        raise SchemaError(f"Cannot read document: {e.strerror}", locus=source)


def error_report(command: str, instance: str, error: ToolkitException) -> ClassificationReport:
    report = ClassificationReport(
        instance=instance,
        command=command,
        error=ReportError(code=error.code, message=error.detail, locus=error.locus),
        exit_code=error.exit_code,
    )
    if isinstance(error, InconclusiveException):
        report.warnings.append(warning("W-INCONCLUSIVE-SEARCH", bound=str(error.bound)))
    return report


def run(
    argv: Sequence[str],
    stdin: Optional[TextIO] = None,
    stdout: Optional[TextIO] = None,
) -> int:
    """Run one command; the report goes to ``stdout`` and the exit code is returned."""
    stdin = stdin or sys.stdin
    stdout = stdout or sys.stdout
    output_format = settings.default_output_format
    command = argv[0] if argv else ""
    instance = ""
    try:
        if not argv:
            raise FlagError(f"Missing command. Usage: {USAGE}")
        if command not in registry.commands:
            raise UnknownCommandError(command)
        entry = registry.commands[command]
        args = build_parser(entry, output_format).parse_args(list(argv[1:]))
        output_format = args.format
        loaded = parse_input(read_document(args.document, stdin), base=args.base)
        instance = loaded.instance
        logger.debug(f"Running {command} on {instance}")
        report = entry.handler(loaded, args)
    except ToolkitException as e:
        logger.error(f"{command or 'bsdyn'} failed: {e}")
        report = error_report(command, instance, e)
    stdout.write(emit_report(report, output_format))
    return report.exit_code


def main() -> None:
    configure_logging(
        log_level=settings.log_level,
        log_to_file=settings.log_to_file,
        log_dir=settings.log_dir,
        max_file_size_mb=settings.max_log_file_size_mb,
        backup_count=settings.log_backup_count,
    )
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
