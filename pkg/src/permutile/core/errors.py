"""Exception hierarchy shared across the engine and the instances."""


class PermutileError(Exception):
    """Base class for all domain errors raised by this package."""


class NonComposable(PermutileError):
    """Paths or steps whose endpoints do not chain."""


class InvalidApplication(PermutileError):
    """A tile applied at a window that does not match its source path."""


class BrokenChain(PermutileError):
    """Trace applications that do not chain before/after."""


class EndpointMismatch(PermutileError):
    """Two paths or traces expected to be coinitial and cofinal are not."""


class NotStandard(PermutileError):
    """An operation requiring a standard path received a non-standard one."""


class ClosureBudgetExceeded(PermutileError):
    """The reversible closure of a path outgrew the configured budget."""


class FuelExhausted(PermutileError):
    """The tile-application budget of a normalisation run was exhausted."""


class NotARedex(PermutileError):
    """Contraction requested at a position that is not a redex occurrence."""


class SamePosition(PermutileError):
    """Residuals requested for a pair that is not two distinct redexes."""


class InvalidOccurrence(PermutileError):
    """An occurrence that does not address a redex of the relevant term."""


class ParseError(PermutileError):
    """Concrete-syntax error, with a best-effort location."""

    def __init__(self, message: str, location: int | None = None):
        if location is not None:
            message = f"{message} (at offset {location})"
        super().__init__(message)
        self.location = location


class NonLeftLinear(ParseError):
    """A rule whose left-hand side repeats a variable."""


class UnknownSymbol(ParseError):
    """A head-value or term mentions a symbol absent from the signature."""


class EnumerationBudgetExceeded(PermutileError):
    """A bounded path enumeration outgrew its budget."""


class FactorisationCheckFailed(PermutileError):
    """The external/internal split failed its defining post-checks."""


class NoFactorisation(PermutileError):
    """A value-reaching path factors through no cone branch."""


class MultipleFactorisations(PermutileError):
    """A value-reaching path factors through more than one cone branch."""


class InstanceCoherenceError(PermutileError):
    """An instance produced data violating a framework invariant."""
