"""Exception types shared across the package."""


class HyperspeciesError(Exception):
    """Base class for all package errors."""


class RationalParseError(HyperspeciesError):
    """A rational literal was not of the form `p` or `p/q` with q > 0."""


class NonPositiveLowerParameter(HyperspeciesError):
    """A lower hypergeometric parameter was zero or negative."""


class ExprParseError(HyperspeciesError):
    """A groupoid or species expression failed to parse.

    Carries the character offset at which parsing failed.
    """

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class UnknownBuiltin(HyperspeciesError):
    """Requested builtin species name is not defined."""


class ResourceLimitExceeded(HyperspeciesError):
    """A materialization or expansion would exceed the configured caps."""


class InvalidGroupoid(HyperspeciesError):
    """An explicit groupoid failed axiom validation."""

    def __init__(self, violations):
        self.violations = list(violations)
        preview = "; ".join(self.violations[:3])
        super().__init__(f"{len(self.violations)} violation(s): {preview}")


class OrderMismatch(HyperspeciesError):
    """Binary series operation applied to series of different orders."""


class CompositionRequiresZeroConstant(HyperspeciesError):
    """Series composition requires the inner series to have a_0 = 0."""


class CompositionRequiresZeroFree(HyperspeciesError):
    """Species composition requires the inner species to vanish on the empty set."""
