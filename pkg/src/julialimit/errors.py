"""Exception types shared across the package.

NumericalError covers failures of iterative machinery (root finding, cycle
refinement, degenerate inputs to set metrics).  The CLI maps them to exit
code 3; bad usage/configuration maps to exit code 2.
"""


class NumericalError(Exception):
    """Base class for numerical failures (CLI exit code 3)."""


class NoConvergence(NumericalError):
    """Root finding did not converge for some indices."""

    def __init__(self, indices, message=None):
        self.indices = tuple(indices)
        super().__init__(message or f"no convergence for root indices {self.indices}")


class EmptyAnnulus(NumericalError):
    """No roots inside the requested annulus; angular statistics undefined."""


class NoCycleFound(NumericalError):
    """Orbit escaped or did not return within the period budget."""


class NewtonDivergence(NumericalError):
    """Newton refinement of a periodic point failed to converge or drifted."""


class EmptySet(NumericalError):
    """A set operation received an empty point set / mask."""


class EmptySource(NumericalError):
    """Distance transform called with no source pixels."""


class DegreeTooLow(NumericalError):
    """Operation requires a polynomial of higher degree."""
