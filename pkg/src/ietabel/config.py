"""Runtime knobs read from the environment."""

import os

BUDGET_ENV = "IETABEL_BUDGET"


def budget(default: int) -> int:
    """Iteration budget: ``$IETABEL_BUDGET`` if set, else ``default``."""
    raw = os.environ.get(BUDGET_ENV)
    if raw is None or raw.strip() == "":
        return default
    value = int(raw)
    if value < 1:
        raise ValueError(f"{BUDGET_ENV} must be a positive integer, got {raw!r}")
    return value
