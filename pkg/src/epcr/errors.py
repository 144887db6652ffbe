"""Exception types shared across the package."""


class EpcrError(Exception):
    """Base class for all package errors."""


class GraphError(EpcrError):
    """Invalid graph structure or reference to a nonexistent edge/vertex."""


class ParseError(EpcrError):
    """Malformed .epg input. Carries the 1-based line number."""

    def __init__(self, line_no: int, message: str):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


class BudgetError(EpcrError):
    """A construction would exceed its configured resource budget."""


class IllegalMoveError(EpcrError):
    """A move violates the game rules. ``condition`` is a short machine tag."""

    def __init__(self, message: str, condition: str = "illegal-move"):
        super().__init__(message)
        self.condition = condition


class StrategyError(EpcrError):
    """A strategy was queried outside the region where it is defined."""
