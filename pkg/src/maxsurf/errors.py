"""Exception types shared across the package.

Everything derives from MaxsurfError so callers can catch broadly; the CLI
maps DomainError-family failures to exit code 3 and verification failures
to exit code 4.
"""


class MaxsurfError(Exception):
    """Base class for all package-specific failures."""


class DomainError(MaxsurfError, ValueError):
    """An argument lies outside the mathematical domain of the operation."""


class PoleError(DomainError):
    """Evaluation exactly at a pole of an elliptic function."""


class IntervalError(DomainError):
    """A point lies outside the interval on which a solution is defined."""


class SingularIntegrandError(DomainError):
    """The integrand has a zero of its denominator inside the range."""


class EigenspaceError(DomainError):
    """A bivector does not lie in the requested star-operator eigenspace."""


class FrameError(DomainError):
    """A supplied frame fails orthonormality or orientation validation."""


class HopfMismatchError(DomainError):
    """Two charts paired for a Gauss-map construction have different Hopf constants."""


class DegenerateTangentError(MaxsurfError, ArithmeticError):
    """Finite-difference tangents are numerically dependent or null."""


class OffManifoldError(MaxsurfError, ArithmeticError):
    """A point fails its defining quadric equation beyond tolerance."""


class VerificationError(MaxsurfError, AssertionError):
    """A verification suite check failed beyond its tolerance."""
