"""Exception types shared across the package."""

__all__ = ["ValidationError", "BudgetExceeded", "ZeroPhi", "DivisionByZero"]


class ValidationError(ValueError):
    """Malformed or inconsistent input data.

    Carries an optional list of individual violations so that callers (and the
    CLI) can report every problem at once instead of the first one hit.
    """

    def __init__(self, message, violations=None):
        self.violations = list(violations) if violations else []
        if self.violations:
            message = message + "\n  - " + "\n  - ".join(self.violations)
        super().__init__(message)


class BudgetExceeded(RuntimeError):
    """A requested enumeration would exceed the configured term budget."""

    def __init__(self, needed, budget):
        self.needed = int(needed)
        self.budget = int(budget)
        super().__init__(
            f"enumeration needs {self.needed} terms, budget is {self.budget}"
        )


class ZeroPhi(ArithmeticError):
    """The spin sum vanishes, so its phase is undefined."""


class DivisionByZero(ArithmeticError):
    """A denominator term of a ratio evaluated to exactly zero."""
