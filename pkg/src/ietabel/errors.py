"""Exception hierarchy.

Every error raised on purpose by the package derives from :class:`IetabelError`.
The CLI maps :class:`ParseError` to exit code 2, :class:`BudgetExceeded` to
exit code 4 and every other subclass to exit code 3.
"""


class IetabelError(Exception):
    """Base class for all package errors."""


class ParseError(IetabelError):
    """Malformed context or element text."""


class BadPolynomial(IetabelError):
    """Minimal polynomial is not monic, not square-free or reducible."""


class BadInterval(IetabelError):
    """Isolating interval does not contain exactly one root."""


class DivisionByZero(IetabelError, ZeroDivisionError):
    pass


class NotInLattice(IetabelError):
    pass


class NotDense(IetabelError):
    """Operation needs a dense subgroup (rank at least 2)."""


class BudgetExceeded(IetabelError):
    pass


class MixedContexts(IetabelError):
    """Operands live over different fields or lattices."""


class NotUnimodular(IetabelError):
    pass


class OutOfRange(IetabelError):
    pass


class Overlap(IetabelError):
    pass


class NotRepresentable(IetabelError):
    pass


class NotAssociated(IetabelError):
    """Partition does not refine the breakpoints of the map."""


class NotInSAFKernel(IetabelError):
    pass


class NotOrientationPreserving(IetabelError):
    pass


class NotRepresentableOverS(IetabelError):
    pass


class InvalidElement(IetabelError, ValueError):
    """Description is not a bijection of [0, 1) (bad permutation, lengths or tiling)."""
