"""Exception types shared across the package.

Contract violations (bad arguments, malformed files) raise ValueError or a
subclass; deliberate size/budget refusals raise ResourceLimitError so callers
can tell "instance too big" apart from "no solution exists".
"""


class PackLabError(Exception):
    """Base class for packlab-specific errors."""


class ResourceLimitError(PackLabError):
    """An operation was refused or aborted because it exceeds a size limit."""


class BudgetExceededError(ResourceLimitError):
    """A search ran out of its candidate or time budget before finishing.

    Distinct from a negative decision: when this is raised, the instance has
    neither been solved nor refuted.
    """


class MalformedInputError(PackLabError, ValueError):
    """A serialized instance or certificate failed structural validation."""
