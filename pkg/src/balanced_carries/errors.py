"""Exception types and the shared enumeration budget guard."""

import os

DEFAULT_ENUMERATION_BUDGET = 10**8
BUDGET_ENV_VAR = "BALANCED_CARRIES_MAX_ENUMERATION"


class BudgetError(RuntimeError):
    """An enumeration oracle was asked to visit more states than allowed."""


class InvariantError(RuntimeError):
    """An internal cross-check failed; this signals a bug, not bad input."""


def enumeration_budget() -> int:
    """Current enumeration cap; override with BALANCED_CARRIES_MAX_ENUMERATION."""
    raw = os.environ.get(BUDGET_ENV_VAR)
    if raw is None:
        return DEFAULT_ENUMERATION_BUDGET
    try:
        value = int(raw)
    except ValueError:
        raise ValueError(f"{BUDGET_ENV_VAR} must be an integer, got {raw!r}") from None
    if value <= 0:
        raise ValueError(f"{BUDGET_ENV_VAR} must be positive, got {value}")
    return value


def check_enumeration_budget(count: int) -> None:
    budget = enumeration_budget()
    if count > budget:
        raise BudgetError(
            f"enumerating {count} states exceeds the budget of {budget}"
        )
