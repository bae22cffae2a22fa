"""Resource-exhaustion signals shared by the search and traversal routines."""

from __future__ import annotations

__all__ = ["BudgetExceeded", "FuelExhausted"]


class BudgetExceeded(Exception):
    """A search or enumeration grew past the configured node budget."""


class FuelExhausted(Exception):
    """Normalization did not reach a fixpoint within the configured fuel."""
