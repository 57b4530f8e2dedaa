"""
Exceptions raised by the exact and numeric verification layers
"""

from typing import Any, Optional


class VerificationError(Exception):
    """Base class for failures that make a construction impossible to continue"""


class NotDivisibleError(VerificationError):
    """Exact Laurent division left a nonzero remainder"""

    def __init__(self, remainder: Any, message: Optional[str] = None):
        self.remainder = remainder
        super().__init__(message or f"division is not exact, remainder {remainder}")


class NullspaceDimensionError(VerificationError):
    """The imposed eigenvalue did not give a one-dimensional nullspace"""

    def __init__(self, dimension: int, n_sites: int):
        self.dimension = dimension
        self.n_sites = n_sites
        super().__init__(
            f"expected a 1-dimensional nullspace for N={n_sites}, found dimension {dimension}"
        )


class IntegralityError(VerificationError):
    """A recursion step that must divide exactly did not"""


class CoefficientExtractionError(VerificationError):
    """The linear system for the coefficients of chi(z) is inconsistent"""


class RootFindingError(VerificationError):
    """Polynomial root iteration did not converge"""


class PairingError(VerificationError):
    """Roots could not be matched under z -> 1/z within tolerance"""


class SingularBetheError(VerificationError):
    """A factor f(z_k, z_l) of the Bethe equations vanishes"""


class PoleProximityError(VerificationError):
    """Every requested sample point sits on a pole of U or V"""
