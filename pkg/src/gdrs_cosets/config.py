"""Shared limits for the exhaustive routes."""

import os

DEFAULT_BUDGET = 10**8
DEFAULT_MAX_Q = 2**16


def default_budget():
    """Brute-force budget, overridable through the ``GDRS_BUDGET`` env var."""
    raw = os.environ.get("GDRS_BUDGET")
    if raw is None or not raw.strip():
        return DEFAULT_BUDGET
    value = int(raw)
    if value <= 0:
        raise ValueError("GDRS_BUDGET must be positive")
    return value


def resolve_budget(budget):
    return default_budget() if budget is None else budget
