"""Shared exception types."""


class BudgetError(RuntimeError):
    """A computation refused to run because a size budget was exceeded."""

    def __init__(self, budget: str, limit, required):
        self.budget = budget
        self.limit = limit
        self.required = required
        super().__init__(
            f"budget '{budget}' exceeded: needs {required}, limit {limit}"
        )


class DefectError(AssertionError):
    """A mathematically guaranteed property failed to hold numerically.

    Raised instead of silently producing wrong output; always indicates a
    bug in this package or corrupted input tables.
    """


class PreconditionError(ValueError):
    """An operation was called on input violating its stated precondition."""
