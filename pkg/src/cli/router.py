import argparse
from dataclasses import dataclass, field
from typing import Any, Callable, Optional

from src.core.exceptions import FlagError
from src.models.responses import ClassificationReport

Handler = Callable[..., ClassificationReport]


@dataclass(frozen=True)
class Flag:
    name: str
    help: str = ""
    required: bool = False
    default: Any = None
    type: Callable[[str], Any] = str
    switch: bool = False
    minimum: Optional[int] = None

    def parse(self, text: str) -> Any:
        value = self.type(text)
        if self.minimum is not None and value < self.minimum:
            raise argparse.ArgumentTypeError(f"must be at least {self.minimum}, got {value}")
        return value


@dataclass(frozen=True)
class Command:
    name: str
    help: str
    handler: Handler
    flags: tuple[Flag, ...] = ()
    tags: tuple[str, ...] = field(default=())


class ToolkitArgumentParser(argparse.ArgumentParser):
    """argparse that raises FlagError instead of printing usage and exiting."""

    def error(self, message: str):
        raise FlagError(message, locus=self.prog)

    def exit(self, status: int = 0, message: Optional[str] = None):
        raise FlagError(message or f"argument parsing stopped with status {status}", locus=self.prog)


class CommandRouter:
    """Collects command handlers registered with ``@router.command``."""

    def __init__(self, tags: Optional[list[str]] = None):
        self.tags = tuple(tags or ())
        self.commands: dict[str, Command] = {}

    def command(self, name: str, help: str = "", flags: tuple[Flag, ...] = ()):
        def register(handler: Handler) -> Handler:
            if name in self.commands:
                raise ValueError(f"Command {name} registered twice")
            self.commands[name] = Command(name, help, handler, tuple(flags), self.tags)
            return handler

        return register

    def include_router(self, other: "CommandRouter") -> None:
        for name, command in other.commands.items():
            if name in self.commands:
                raise ValueError(f"Command {name} registered twice")
            self.commands[name] = command


def build_parser(command: Command, default_format: str) -> ToolkitArgumentParser:
    parser = ToolkitArgumentParser(prog=f"bsdyn {command.name}", description=command.help, add_help=False)
    parser.add_argument("document", help="JSON document path, or - for standard input")
    parser.add_argument("--format", choices=("text", "json"), default=default_format)
    parser.add_argument("--base", default=None, help="Base vertex override")
    for flag in command.flags:
        if flag.switch:
            parser.add_argument(flag.name, action="store_true", help=flag.help)
        else:
            parser.add_argument(
                flag.name, required=flag.required, default=flag.default, type=flag.parse, help=flag.help
            )
    return parser
