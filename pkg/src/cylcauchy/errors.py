"""Exception and warning types shared across the package.

Every refusal the library can make maps to one class here, so callers
(and the command line front end) can distinguish bad input from
numerical range limits from genuine ill-posedness.
"""


class CylcauchyError(Exception):
    """Base class for all package-specific refusals."""


class SpectrumFormatError(CylcauchyError, ValueError):
    """A spectrum or coefficient file could not be parsed."""


class FriedrichsViolationError(CylcauchyError, ValueError):
    """An operator spectrum contains an eigenvalue below 1."""


class SpectrumOrderingError(CylcauchyError, ValueError):
    """Spectrum eigenvalues are not nondecreasing in the index."""


class RangeOverflowError(CylcauchyError, ValueError):
    """Arguments would overflow the hyperbolic terms of the characteristic
    function; the logarithmic route stays usable far beyond this point."""


class UnderflowRangeError(CylcauchyError, ValueError):
    """sqrt(mu) is so large that exp(-sqrt(mu)) quantities degrade past the
    supported range (sqrt(mu) > 600)."""


class RootNotFoundError(CylcauchyError, RuntimeError):
    """No sign change was found in the scanned interval."""


class ScanBudgetError(CylcauchyError, ValueError):
    """A requested scan would exceed the evaluation budget."""


class OracleRangeError(CylcauchyError, ValueError):
    """Discretization parameters outside the supported oracle range."""


class JacobiConvergenceError(CylcauchyError, RuntimeError):
    """The rotation sweep limit was reached before the off-diagonal norm
    target; carries the norm that was achieved."""

    def __init__(self, message: str, achieved: float):
        super().__init__(message)
        self.achieved = achieved


class UnsupportedSpectrumError(CylcauchyError, ValueError):
    """The operation needs an evaluable eigenbasis, which this spectrum
    does not provide."""


class ResolutionError(CylcauchyError, ValueError):
    """The sample grid is too coarse to resolve the requested modes."""


class IllPosedError(CylcauchyError, RuntimeError):
    """Refusing to synthesize a solution whose coefficient series diverges."""


class AmplificationOverflowError(CylcauchyError, ValueError):
    """A coefficient would be divided by an eigenvalue too small to
    represent the quotient meaningfully."""


class TruncatedResultWarning(UserWarning):
    """Fewer results were available than requested; the payload says how
    many were actually returned."""


class InsufficientDataWarning(UserWarning):
    """Too few coefficients for a solvability verdict; sums are still
    reported and the verdict stays indeterminate."""
