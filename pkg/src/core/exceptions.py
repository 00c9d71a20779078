from typing import Optional

INPUT_ERROR = 3
HYPOTHESIS_FAILED = 1
INCONCLUSIVE = 2


class ToolkitException(Exception):
    """Base error. ``exit_code`` is what the CLI returns when it escapes a command."""

    code = "error"

    def __init__(
        self,
        exit_code: int,
        detail: str,
        locus: Optional[str] = None,
    ):
        super().__init__(detail if locus is None else f"{detail} (at {locus})")
        self.exit_code = exit_code
        self.detail = detail
        self.locus = locus


class InputException(ToolkitException):
    def __init__(self, detail: str, locus: Optional[str] = None):
        super().__init__(exit_code=INPUT_ERROR, detail=detail, locus=locus)


class SchemaError(InputException):
    code = "schema"


class ResolveError(InputException):
    code = "resolve"


class UnknownCommandError(InputException):
    code = "unknown-command"

    def __init__(self, command: str):
        super().__init__(detail=f"Unknown command '{command}'", locus=command)


class FlagError(InputException):
    code = "flag"


class SelfLoopError(InputException):
    code = "self-loop"

    def __init__(self, vertex: str):
        super().__init__(detail=f"Self-loop at vertex {vertex}", locus=vertex)


class DuplicateEdgeError(InputException):
    code = "duplicate-edge"

    def __init__(self, edge: str):
        super().__init__(detail=f"Duplicate edge {edge}", locus=edge)


class UnknownVertexError(InputException):
    code = "unknown-vertex"

    def __init__(self, vertex: str, where: Optional[str] = None):
        super().__init__(detail=f"Undeclared vertex {vertex}", locus=where or vertex)


class ZeroIndexError(InputException):
    code = "zero-index"

    def __init__(self, edge: str):
        super().__init__(detail=f"Edge {edge} has index 0", locus=edge)


class BrokenInvolutionError(InputException):
    code = "broken-involution"

    def __init__(self, edge: str, detail: str):
        super().__init__(detail=f"Edge involution broken at {edge}: {detail}", locus=edge)


class WordParseError(InputException):
    code = "word-parse"


class NotComposableError(InputException):
    code = "not-composable"

    def __init__(self, left_source: str, right_range: str):
        super().__init__(
            detail=f"Cannot compose: source {left_source} differs from range {right_range}"
        )


class NotGBSError(InputException):
    code = "not-gbs"

    def __init__(self, operation: str):
        super().__init__(detail=f"{operation} requires a GBS graph of groups")


class NotEuclideanError(InputException):
    code = "not-euclidean"

    def __init__(self, tag: str):
        super().__init__(detail=f"Factor tag '{tag}' is not Euclidean")


class NotIrreducibleError(InputException):
    code = "not-irreducible"


class BackendRefusalError(InputException):
    code = "backend-refusal"


class DoublingJoinFoundError(InputException):
    code = "doubling-join-found"


class HypothesisFailedError(ToolkitException):
    code = "hypothesis-failed"

    def __init__(self, hypothesis: str, detail: str):
        super().__init__(exit_code=HYPOTHESIS_FAILED, detail=detail, locus=hypothesis)
        self.hypothesis = hypothesis


class SingularInputError(HypothesisFailedError):
    code = "singular-input"

    def __init__(self, edges: tuple[str, ...]):
        super().__init__(
            "non-singular",
            f"Graph of groups is singular at edge(s) {', '.join(edges)}",
        )


class InconclusiveException(ToolkitException):
    def __init__(self, detail: str, bound: int):
        super().__init__(exit_code=INCONCLUSIVE, detail=detail, locus=f"bound={bound}")
        self.bound = bound


class NotFoundWithinBoundError(InconclusiveException):
    code = "not-found-within-bound"


class BoundExceededError(InconclusiveException):
    code = "bound-exceeded"


class NonPeriodicCarryError(InconclusiveException):
    code = "non-periodic-carry"


class WitnessCheckError(ToolkitException):
    """A constructed witness failed its own verification; nothing is certified."""

    code = "witness-check-failed"

    def __init__(self, detail: str, locus: Optional[str] = None):
        super().__init__(exit_code=INCONCLUSIVE, detail=detail, locus=locus)


class SingularGraphWarning(UserWarning):
    """Raised through ``warnings.warn`` when a singular graph of groups is built."""
