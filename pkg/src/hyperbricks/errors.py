"""Exception hierarchy shared by all modules."""


class HyperbricksError(Exception):
    """Base class for every error raised by this package."""


class ParseError(HyperbricksError, ValueError):
    """Malformed serialized hypergraph (or other payload)."""


class PreconditionError(HyperbricksError, ValueError):
    """An operation was called on input outside its contract."""


class BudgetExceeded(HyperbricksError):
    """An exhaustive search hit its node ceiling.

    Raised instead of returning a truncated answer: callers rely on
    complete enumerations.
    """


class TheoremViolation(HyperbricksError, AssertionError):
    """A proven structural fact failed on a concrete instance.

    This always indicates a bug in the implementation.
    """
