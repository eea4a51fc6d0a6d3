"""Exception hierarchy for the whole package.

Every error raised on purpose by the library derives from AbelkitError, so
callers (and the CLI) can distinguish domain failures from genuine bugs.
"""


class AbelkitError(Exception):
    """Base class for all library-specific errors."""


# --- map construction ------------------------------------------------------

class UnknownMap(AbelkitError):
    """Requested name is not in the built-in map registry."""


class MapExprSyntaxError(AbelkitError):
    """Map expression text does not match the grammar."""


class NotTangentToIdentity(AbelkitError):
    """Map does not satisfy f(0) = 0 with f'(0) = 1."""


class NotCanonical(AbelkitError):
    """Map is tangent to the identity but its x^2 coefficient is not -1."""


class DivisionByZeroPolynomial(AbelkitError):
    """Expression divides by the zero polynomial."""


# --- evaluation and iteration ----------------------------------------------

class PoleHit(AbelkitError):
    """Denominator vanished exactly at an evaluation point."""


class OrbitEscaped(AbelkitError):
    """An iterate (including the starting point) left the map's domain."""

    def __init__(self, message: str, step: int | None = None):
        super().__init__(message)
        self.step = step


# --- exact sequences --------------------------------------------------------

class SizeLimit(AbelkitError):
    """Exact orbit length exceeds the doubly-exponential growth guard."""


class DegenerateStep(AbelkitError):
    """Sum/product sequence hit a prefix product equal to 1."""


class NonIntegralStep(AbelkitError):
    """Integer recurrence produced a non-integer value."""


class ReparametrizationFailed(AbelkitError):
    """Transformed orbit does not satisfy the target recurrence exactly."""


# --- constant estimation ----------------------------------------------------

class InfeasibleParameters(AbelkitError):
    """No iteration count within bounds meets the accuracy target."""


class NewtonDiverged(AbelkitError):
    """Newton solve did not reach the residual tolerance."""


class AmbiguousRoot(AbelkitError):
    """Newton step size indicates the initial guess was not in basin."""


class ValidationFailed(AbelkitError):
    """Doubled-N recomputation did not confirm the requested digits."""


# --- shape analysis ---------------------------------------------------------

class NoSignChange(AbelkitError):
    """Bracket endpoints have the same difference sign; nothing to locate."""
