"""Exception hierarchy shared across the package."""


class ToolkitError(Exception):
    """Base class for all package errors."""


class DigraphError(ToolkitError, ValueError):
    """Invalid digraph construction or mutation (loops, bad endpoints, ...)."""


class ParseError(ToolkitError, ValueError):
    """Malformed digraph text input; carries a line number when known."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


class InputError(ToolkitError, ValueError):
    """Invalid parameters for an operation (ranges, malformed instances)."""


class GuardError(InputError):
    """Problem size beyond the supported exact-computation range."""


class ConstructionError(ToolkitError):
    """Requested construction does not exist for these inputs."""
