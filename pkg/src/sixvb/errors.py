"""Exception types shared across the package."""


class PoleError(ZeroDivisionError):
    """A weight, coefficient or normalization was evaluated at a pole."""


class InvalidSpecError(ValueError):
    """A lattice description failed validation."""

    def __init__(self, violations):
        self.violations = tuple(violations)
        super().__init__("invalid lattice: " + "; ".join(self.violations))


class DegenerateSpecError(ArithmeticError):
    """A reference component or reference wave value vanished, so the
    partition-function normalization is undefined."""
