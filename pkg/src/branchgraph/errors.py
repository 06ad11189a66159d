"""Exception hierarchy shared by all modules."""


class BranchGraphError(Exception):
    """Base class for every error raised by this package."""


class DepthError(BranchGraphError):
    """A requested level lies outside the truncation window."""


class VertexLookupError(BranchGraphError, KeyError):
    """A vertex (or label) is not present in the graph."""

    def __str__(self):
        return Exception.__str__(self)


class LevelOverflowError(BranchGraphError):
    """A generated level exceeds the configured size cap."""


class ResourceError(BranchGraphError):
    """A brute-force enumeration exceeded its cap."""


class ContractError(BranchGraphError):
    """An operation was called with inputs violating its precondition."""


class CoverageError(BranchGraphError):
    """A function table lacks values that an operation needs."""

    def __init__(self, message, missing=()):
        super().__init__(message)
        self.missing = list(missing)


class DomainError(BranchGraphError, ValueError):
    """A numeric parameter is out of its admissible range."""


class UndefinedFormError(BranchGraphError, ArithmeticError):
    """An extended-real expression has no value (e.g. inf - inf)."""


class CatalogError(BranchGraphError):
    """Unknown catalog name or malformed parameters."""
