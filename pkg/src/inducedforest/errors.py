"""Exception hierarchy shared by every module of the package."""


class InducedForestError(Exception):
    """Base class for all errors raised by :mod:`inducedforest`."""


class InvalidEdge(InducedForestError, ValueError):
    pass


class HostMismatch(InducedForestError, ValueError):
    pass


class VertexNotInSet(InducedForestError, ValueError):
    pass


class NotAForest(InducedForestError, ValueError):
    pass


class MalformedGraph6(InducedForestError, ValueError):
    pass


class MalformedEdgeList(InducedForestError, ValueError):
    pass


class Unsupported(InducedForestError, ValueError):
    pass


class NotApplicable(InducedForestError, ValueError):
    pass


class BoundViolation(InducedForestError, ArithmeticError):
    """A lower bound that must hold was found to fail."""


class Incomplete(InducedForestError):
    """A budgeted computation stopped early.

    ``result`` holds the best state reached so far (an ``ExactResult`` or a
    ``SearchState`` depending on the raiser).
    """

    def __init__(self, message, result):
        super().__init__(message)
        self.result = result


class BaseCaseShortfall(InducedForestError):
    def __init__(self, message, diagnostics=None):
        super().__init__(message)
        self.diagnostics = diagnostics or {}


class TraceInvalid(InducedForestError):
    def __init__(self, message, step_index):
        super().__init__(f"step {step_index}: {message}")
        self.step_index = step_index


class InvalidSeed(InducedForestError, ValueError):
    pass


class NotCertified(InducedForestError):
    pass


class NothingToDo(InducedForestError, ValueError):
    pass


class InvalidSet(InducedForestError, ValueError):
    pass


class GenerationFailed(InducedForestError, RuntimeError):
    pass
