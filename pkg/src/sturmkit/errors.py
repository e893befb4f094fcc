"""Exception types shared across the toolkit.

The CLI maps these onto exit codes: invalid input (1), solver
non-convergence (2), Darboux hypothesis violations (3).
"""


class SturmkitError(Exception):
    """Base class for all toolkit errors."""


class InputError(SturmkitError, ValueError):
    """Malformed or out-of-contract input (files, arguments, preconditions)."""


class ResolutionError(InputError):
    """Grid too coarse for the requested spectral parameter."""


class DomainError(InputError):
    """Operation invoked outside its supported parameter domain."""


class AdmissibilityError(InputError):
    """Spectral target violates the strict interlacing condition."""


class BracketingError(SturmkitError):
    """Eigenvalue search could not isolate a simple-spectrum sign pattern.

    Carries ``probes``, a list of ``(lambda, w(lambda))`` pairs recording
    every characteristic-function evaluation that led to the failure.
    """

    def __init__(self, message, probes=None):
        super().__init__(message)
        self.probes = list(probes) if probes is not None else []


class ConsistencyError(SturmkitError):
    """Internally computed quantities disagree beyond their tolerance.

    Signals a defect upstream (typically the eigenvalue search), not bad
    user input.
    """


class DarbouxError(SturmkitError):
    """Base class for single-datum transform failures."""

    def __init__(self, message, step=None):
        super().__init__(message)
        self.step = step


class PositivityError(DarbouxError):
    """A factor that must stay strictly positive touched zero on the grid."""

    def __init__(self, message, min_value=None, at_x=None, step=None):
        super().__init__(message, step=step)
        self.min_value = min_value
        self.at_x = at_x


class CrossingError(DarbouxError):
    """Requested shift leaves the window between neighboring eigenvalues."""
