"""Exception hierarchy shared by all modules."""


class DWError(Exception):
    """Base class for every error raised by this package."""


class ParseError(DWError, ValueError):
    """Malformed textual or JSON input."""


class DimensionError(DWError, ValueError):
    """Shapes of vectors or matrices do not fit together."""


class ContractError(DWError, ValueError):
    """An operation was called outside its precondition."""


class GuardError(DWError, RuntimeError):
    """A search space exceeds the configured enumeration limit."""


class InconsistentError(DWError, ValueError):
    """A linear system has no solution."""
