"""Exception hierarchy shared by all satlab modules."""


class SatlabError(Exception):
    """Base class for every error raised by satlab."""


class StructuralError(SatlabError, ValueError):
    """Operands do not live in the same algebra, or shapes do not match."""


class PreconditionError(SatlabError, ValueError):
    """An operation was called on inputs violating its stated precondition."""


class ConstructionError(SatlabError, ValueError):
    """A structure failed verification of its defining axioms."""


class CapacityError(SatlabError, RuntimeError):
    """A configured size bound or a graph window was exceeded."""


class ConsistencyError(SatlabError, RuntimeError):
    """Independent computations of the same quantity disagree."""


class IndexFiniteTypeError(SatlabError, RuntimeError):
    """The frame operator of a conditional expectation is singular."""


class ProblemFileError(SatlabError, ValueError):
    """A problem file is not valid JSON, violates the schema, or references unknown ids."""

    def __init__(self, message: str, path: str = ""):
        self.path = path
        super().__init__(f"{path}: {message}" if path else message)
