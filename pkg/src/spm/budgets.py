"""Resource budgets for enumeration-heavy operations.

Submodule lattices of vector spaces blow up combinatorially; every
enumeration entry point takes a Budgets value and fails loudly (never
hangs) when a limit is hit.
"""

from __future__ import annotations

from dataclasses import dataclass


class BudgetExceeded(Exception):
    """An enumeration hit a configured limit.  `budget` names the limit."""

    def __init__(self, budget: str, limit: int, needed: int | str):
        self.budget = budget
        self.limit = limit
        self.needed = needed
        super().__init__(f"budget '{budget}' exceeded: limit {limit}, needed {needed}")


@dataclass(frozen=True)
class Budgets:
    max_module_order: int = 4096
    max_submodules: int = 100000
    seed: int = 20240601

    def check_module_order(self, order: int) -> None:
        if order > self.max_module_order:
            raise BudgetExceeded("max-module-order", self.max_module_order, order)

    def check_submodule_count(self, count: int) -> None:
        if count > self.max_submodules:
            raise BudgetExceeded("max-submodules", self.max_submodules, count)


DEFAULT_BUDGETS = Budgets()
