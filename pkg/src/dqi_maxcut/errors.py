"""Shared exception types."""


class BudgetError(RuntimeError):
    """An enumeration budget would be exceeded.

    Raised instead of silently truncating; the message names the binding
    budget, its limit, and what the request needed.
    """

    def __init__(self, budget: str, limit, needed):
        self.budget = budget
        self.limit = limit
        self.needed = needed
        super().__init__(
            f"budget '{budget}' exceeded: limit {limit}, required {needed}"
        )


class InfeasibleError(RuntimeError):
    """The requested object does not exist (e.g. no T-join, no short decoding)."""
