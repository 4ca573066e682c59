"""Exception and warning types raised across the package."""


class DomainError(ValueError):
    """Argument outside the supported domain of a function."""


class BracketError(RuntimeError):
    """No sign change could be certified for a root search."""


class InvariantError(RuntimeError):
    """A structural invariant (e.g. zero interlacing) failed to hold."""


class TailCertificateError(RuntimeError):
    """Truncated tail could not be certified; increase the truncation."""


class ConsistencyError(RuntimeError):
    """Two assembly routes for the same quantity disagree."""


class DegenerateGridError(ValueError):
    """A fitting grid is too small or does not span enough range."""


class PrecisionWarning(RuntimeWarning):
    """Two independent evaluation routes disagree beyond tolerance."""


class IllConditionedWarning(RuntimeWarning):
    """Extrapolation levels stopped converging (double-precision floor)."""


class DivergenceWarning(RuntimeWarning):
    """A series expected to converge does not (e.g. Schatten p <= 1/2)."""
