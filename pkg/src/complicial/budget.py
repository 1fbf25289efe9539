"""Node-count budgets for the enumerative algorithms.

Budgets count search nodes rather than wall-clock time so that a run that
succeeds on one machine succeeds on every machine.
"""

from __future__ import annotations

import os

DEFAULT_BUDGET = 2_000_000
BUDGET_ENV = "COMPLICIAL_BUDGET"


class BudgetExceeded(RuntimeError):
    """Raised when an enumeration visits more nodes than it was allowed."""


class Budget:
    def __init__(self, limit: int | None = None):
        if limit is None:
            limit = int(os.environ.get(BUDGET_ENV, DEFAULT_BUDGET))
        self.limit = limit
        self.used = 0

    def spend(self, n: int = 1) -> None:
        self.used += n
        if self.used > self.limit:
            raise BudgetExceeded(f"node budget of {self.limit} exceeded")

    def __repr__(self) -> str:
        return f"Budget(used={self.used}, limit={self.limit})"


def ensure(budget: Budget | int | None) -> Budget:
    if isinstance(budget, Budget):
        return budget
    return Budget(budget)
