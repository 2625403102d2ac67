class NullPointError(Exception):
    """Base class for solver errors."""


class DomainError(NullPointError, ValueError):
    """Parameters outside the admissible regime of a model."""


class NoRootError(NullPointError, LookupError):
    """No determinant zero (or not the requested branch) inside the search window."""


class DegenerateRootError(NullPointError, ArithmeticError):
    """Coefficient recovery hit a singular reduced system."""
