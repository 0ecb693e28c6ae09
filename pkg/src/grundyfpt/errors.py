"""Exception hierarchy shared by the library and the CLI."""


class GrundyError(Exception):
    """Base class for every error raised by grundyfpt."""


class GraphParseError(GrundyError, ValueError):
    """Malformed graph or modulator file."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class InputError(GrundyError, ValueError):
    """An argument refers to vertices outside the graph or is otherwise ill-formed."""


class ModulatorError(GrundyError, ValueError):
    """The supplied vertex set is not a cluster modulator of the graph."""

    def __init__(self, message: str, missing_edge: tuple[int, int] | None = None):
        self.missing_edge = missing_edge
        super().__init__(message)


class StructuralError(GrundyError, ValueError):
    """Color classes overlap, are empty, or reference unknown vertices."""


class WrongSolverError(GrundyError, ValueError):
    """The instance has a clique count the solver does not handle."""


class ContractError(GrundyError, ValueError):
    """A documented precondition was violated by the caller."""


class ResourceError(GrundyError, RuntimeError):
    """A size guard or search budget was exceeded."""


class SizeGuardError(ResourceError):
    """Instance too large for an exhaustive routine."""


class IlpBudgetExceeded(ResourceError):
    """The feasibility search ran out of nodes before reaching a verdict."""


class SolverInconsistencyError(GrundyError, RuntimeError):
    """A solver produced a certificate that failed validation."""
