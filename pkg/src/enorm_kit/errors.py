"""Exception types raised by the toolkit.

Validation failures subclass ``ValueError`` so callers can catch either the
specific condition or the broad class.
"""


class ENormKitError(ValueError):
    """Base class for all toolkit errors."""


class NonSquare(ENormKitError):
    """A square matrix was required."""


class NonFinite(ENormKitError):
    """Input contains NaN or Inf entries."""


class NotHermitian(ENormKitError):
    """Matrix is further from Hermitian than the allowed tolerance."""


class NotPSD(ENormKitError):
    """Matrix has an eigenvalue below the negative tolerance."""


class DimMismatch(ENormKitError):
    """Operand dimensions are incompatible."""


class Infeasible(ENormKitError):
    """Energy budget is not positive."""


class InfeasibleState(ENormKitError):
    """State violates the energy or trace constraint."""


class NoBracket(ENormKitError):
    """The dual objective is still decreasing at the largest multiplier tried."""


class EmptyKraus(ENormKitError):
    """A completely positive map needs at least one Kraus operator."""


class NotContraction(ENormKitError):
    """Operator norm exceeds one beyond tolerance."""


class NotSubunital(ENormKitError):
    """Dual map applied to the identity exceeds the identity."""


class NoConvergence(ENormKitError):
    """Iteration ended without certifying the requested tolerance."""


class EmptyGrid(ENormKitError):
    """A sampled function needs at least one grid point."""


class GridTooLarge(ENormKitError):
    """Requested energies exceed the validity threshold of the truncation."""


class BadParams(ENormKitError):
    """Construction parameters out of range."""


class UnknownSuite(ENormKitError):
    """Verification suite name not recognized."""
