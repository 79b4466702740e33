"""Exception types shared across the package."""


class InputError(ValueError):
    """An argument violates an operation's precondition."""


class BudgetExceeded(RuntimeError):
    """An exhaustive computation would exceed its configured size cap."""

    def __init__(self, count, budget):
        super().__init__(
            f"state space has {count} search trees, over the budget of {budget}"
        )
        self.count = count
        self.budget = budget
